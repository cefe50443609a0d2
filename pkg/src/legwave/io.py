"""File formats: sample CSV, shape CSV, PGM images, JSON dumps.

Every writer goes through :func:`atomic_write` so a failed run never leaves
a partial output file behind.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np


class ParseError(ValueError):
    """Input file could not be interpreted."""


def fmt(x) -> str:
    # repr is the shortest round-trip form, never more than 17 significant digits
    return repr(float(x))


def atomic_write(path, data: str | bytes) -> None:
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"newline": "\n", "encoding": "utf-8"})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_signal_csv(path) -> np.ndarray:
    """One sample per line; blank lines and ``#`` comments are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text.split(",")[0]))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number: {text!r}") from None
    if not values:
        raise ParseError(f"{path}: no samples")
    return np.array(values)


def signal_csv(values) -> str:
    return "".join(fmt(x) + "\n" for x in values)


def table_csv(header: list[str], columns) -> str:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def grid_csv(fn) -> str:
    """``t,value`` rows for a :class:`~legwave.cascade.DyadicGridFunction`."""
    return table_csv(["t", "value"], [fn.t, fn.values])


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _pgm_tokens(data: bytes, count: int, pos: int):
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ParseError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos


def parse_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise ParseError("not a PGM file (expected P2 or P5)")
    try:
        (w, h, maxval), pos = _pgm_tokens(data, 3, 2)
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise ParseError("malformed PGM header") from None
    if width <= 0 or height <= 0 or not 0 < maxval <= 255:
        raise ParseError(f"unsupported PGM geometry {width}x{height} maxval {maxval}")
    count = width * height
    if magic == b"P5":
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) != count:
            raise ParseError("truncated P5 raster")
        pixels = np.frombuffer(raster, dtype=np.uint8).astype(float)
    else:
        try:
            toks, _ = _pgm_tokens(data, count, pos)
            pixels = np.array([int(t) for t in toks], dtype=float)
        except ValueError:
            raise ParseError("malformed P2 raster") from None
    if np.any(pixels > maxval):
        raise ParseError("pixel value exceeds maxval")
    return pixels.reshape(height, width)


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def quantize(image) -> np.ndarray:
    """Clamp to ``[0, 255]`` and round half away from zero."""
    clipped = np.clip(np.asarray(image, dtype=float), 0.0, 255.0)
    return np.floor(clipped + 0.5).astype(np.uint8)


def pgm_bytes(image, binary: bool = True) -> bytes:
    pix = quantize(image)
    height, width = pix.shape
    if binary:
        return f"P5\n{width} {height}\n255\n".encode("ascii") + pix.tobytes()
    rows = "\n".join(" ".join(str(int(p)) for p in row) for row in pix)
    return f"P2\n{width} {height}\n255\n{rows}\n".encode("ascii")
