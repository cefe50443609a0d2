"""``legwave`` command line interface.

Exit codes: 0 ok, 2 usage/validation, 3 resource limit, 4 I/O.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import io
from .analysis import error_norms, orthogonality_defect, roundtrip_error
from .cascade import cascade_scaling, cascade_wavelet
from .errors import InvalidOrder, LegwaveError, ResourceLimit
from .filterbank import filter_bank, freq_response
from .legendre import LegendreOrder
from .transform import (
    DecompositionResult,
    Subbands2D,
    dwt1d,
    dwt2d,
    idwt1d,
    idwt2d,
    wp_decompose,
    wp_functions,
)

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


def resolve_order(args) -> LegendreOrder:
    """Turn ``legdN`` / ``--family legdN`` / ``--v <odd>`` into an order."""
    names = [x for x in (getattr(args, "family_pos", None), getattr(args, "family", None)) if x]
    v = getattr(args, "v", None)
    if len(names) > 1 and names[0] != names[1]:
        raise UsageError("conflicting family names")
    if names and v is not None:
        raise UsageError("give either a legdN family or --v, not both")
    if v is not None:
        return LegendreOrder.from_degree(v)
    if not names:
        raise UsageError("a family (legdN) or --v <odd> is required")
    m = re.fullmatch(r"legd(\d+)", names[0])
    if not m:
        raise UsageError(f"family must look like legdN, got {names[0]!r}")
    return LegendreOrder.from_index(int(m.group(1)))


def _emit(out, text: str | bytes) -> None:
    if out is None or out == "-":
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)
    else:
        io.atomic_write(out, text)


def _bank(args):
    return filter_bank(resolve_order(args), args.sign)


def _with_meta(d: dict, args) -> dict:
    d["sign"] = args.sign
    return d


def cmd_filters(args) -> int:
    fb = _bank(args)
    if args.format == "csv":
        k = np.arange(fb.v + 1)
        _emit(args.out, io.table_csv(["k", "h", "g"], [k, fb.h, fb.g]))
    else:
        _emit(args.out, io.dumps_json(fb.to_dict()))
    return EXIT_OK


def cmd_response(args) -> int:
    fb = _bank(args)
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    resp = freq_response(fb.h, np.linspace(-np.pi, np.pi, args.points))
    cols = [resp.omega, resp.values.real, resp.values.imag, resp.magnitude]
    if args.format == "json":
        names = ["omega", "re", "im", "mag"]
        _emit(args.out, io.dumps_json({"family": "legd", "N": fb.N, "v": fb.v,
                                       **{n: [float(x) for x in c] for n, c in zip(names, cols)}}))
    else:
        _emit(args.out, io.table_csv(["omega", "re", "im", "mag"], cols))
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise UsageError(f"--wp expects 'a..b' or a single index, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError("--wp range is empty")
    return list(range(lo, hi + 1))


def _shape_text(fn, fmt: str) -> str:
    if fmt == "json":
        return io.dumps_json({"kind": fn.kind, "index": fn.index, "level": fn.level,
                              "t": [float(x) for x in fn.t], "value": [float(x) for x in fn.values]})
    return io.grid_csv(fn)


def cmd_wavefun(args) -> int:
    fb = _bank(args)
    if args.wp is not None:
        indices = _parse_range(args.wp)
        if args.out is None:
            raise UsageError("--wp needs --out <directory>")
        funcs = wp_functions(fb, max(indices[-1], 1), args.iter)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        ext = "json" if args.format == "json" else "csv"
        for i in indices:
            io.atomic_write(outdir / f"{fb.order.name}_wp{i:02d}.{ext}", _shape_text(funcs[i], args.format))
        return EXIT_OK
    phi = cascade_scaling(fb, args.iter)
    fn = phi if args.kind == "phi" else cascade_wavelet(fb, phi)
    _emit(args.out, _shape_text(fn, args.format))
    return EXIT_OK


def cmd_dwt(args) -> int:
    fb = _bank(args)
    x = io.read_signal_csv(args.input)
    d = dwt1d(x, fb, args.levels, args.boundary)
    _emit(args.out, io.dumps_json(_with_meta(d.to_dict(), args)))
    return EXIT_OK


def _bank_from_dump(data: dict, args):
    try:
        order = LegendreOrder.from_index(int(data["N"]))
    except (KeyError, TypeError, ValueError):
        raise UsageError("decomposition file lacks a valid family index N") from None
    return filter_bank(order, data.get("sign", args.sign))


def cmd_idwt(args) -> int:
    data = io.read_json(args.input)
    fb = _bank_from_dump(data, args)
    x = idwt1d(DecompositionResult.from_dict(data), fb)
    _emit(args.out, io.signal_csv(x))
    return EXIT_OK


def _report_error(label: str, ref: np.ndarray, rec: np.ndarray) -> None:
    if ref.shape != rec.shape:
        raise UsageError(f"reference shape {ref.shape} differs from reconstruction {rec.shape}")
    max_abs, rel = error_norms(ref, rec)
    print(f"{label}: max_abs_error={io.fmt(max_abs)} relative_l2_error={io.fmt(rel)}", file=sys.stderr)


def cmd_dwt2(args) -> int:
    fb = _bank(args)
    img = io.read_pgm(args.input)
    sub = dwt2d(img, fb, args.levels, args.boundary)
    _emit(args.out, io.dumps_json(_with_meta(sub.to_dict(), args)))
    _report_error("round trip", img, idwt2d(sub, fb))
    return EXIT_OK


def cmd_idwt2(args) -> int:
    data = io.read_json(args.input)
    fb = _bank_from_dump(data, args)
    rec = idwt2d(Subbands2D.from_dict(data), fb)
    if args.reference:
        _report_error("round trip", io.read_pgm(args.reference), rec)
    _emit(args.out, io.pgm_bytes(rec, binary=args.pgm == "p5"))
    return EXIT_OK


def cmd_wp(args) -> int:
    fb = _bank(args)
    x = io.read_signal_csv(args.input)
    tree = wp_decompose(x, fb, args.depth, args.boundary)
    _emit(args.out, io.dumps_json(_with_meta(tree.to_dict(), args)))
    return EXIT_OK


def cmd_analyze(args) -> int:
    fb = _bank(args)
    ortho = orthogonality_defect(fb)
    recon = roundtrip_error(args.length, args.levels, fb, args.trials, args.seed)
    report = {"family": "legd", "N": fb.N, "v": fb.v, "seed": args.seed, "trials": args.trials,
              "orthogonality": ortho.to_dict(), "reconstruction": recon.to_dict()}
    _emit(args.out, io.dumps_json(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("family_pos", nargs="?", metavar="legdN", help="family member, e.g. legd2")
    family.add_argument("--family", help="family member, e.g. legd2")
    family.add_argument("--v", type=int, help="odd polynomial degree (v = 2N - 1)")
    family.add_argument("--sign", choices=("suppressed", "paper"), default="suppressed")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--out", help="output path (default: stdout)")

    boundary = argparse.ArgumentParser(add_help=False)
    boundary.add_argument("--boundary", choices=("periodic",), default="periodic")

    parser = argparse.ArgumentParser(prog="legwave", description="Legendre wavelet toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filters", parents=[family, common], help="export filter coefficients")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_filters)

    p = sub.add_parser("response", parents=[family, common], help="sample the frequency response")
    p.add_argument("--points", type=int, default=1025)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_response)

    p = sub.add_parser("wavefun", parents=[family, common], help="scaling/wavelet/packet shapes")
    p.add_argument("--iter", type=int, default=8)
    p.add_argument("--kind", choices=("phi", "psi"), default="phi")
    p.add_argument("--wp", help="packet index range, e.g. 0..9 (--out is a directory)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_wavefun)

    p = sub.add_parser("dwt", parents=[family, common, boundary], help="1D decomposition")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--levels", type=int, default=1)
    p.set_defaults(func=cmd_dwt)

    p = sub.add_parser("idwt", parents=[common], help="1D reconstruction")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--sign", choices=("suppressed", "paper"), default="suppressed")
    p.set_defaults(func=cmd_idwt)

    p = sub.add_parser("dwt2", parents=[family, common, boundary], help="2D decomposition of a PGM")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--levels", type=int, default=1)
    p.set_defaults(func=cmd_dwt2)

    p = sub.add_parser("idwt2", parents=[common], help="2D reconstruction to PGM")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--reference", help="original PGM; report round-trip error against it")
    p.add_argument("--pgm", choices=("p5", "p2"), default="p5")
    p.add_argument("--sign", choices=("suppressed", "paper"), default="suppressed")
    p.set_defaults(func=cmd_idwt2)

    p = sub.add_parser("wp", parents=[family, common, boundary], help="wavelet packet decomposition")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(func=cmd_wp)

    p = sub.add_parser("analyze", parents=[family, common], help="orthogonality and round-trip report")
    p.add_argument("--length", type=int, default=16)
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"legwave: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, InvalidOrder, LegwaveError, ValueError) as exc:
        print(f"legwave: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"legwave: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
