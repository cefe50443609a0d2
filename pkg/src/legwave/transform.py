"""Periodic decimated wavelet transforms built on a Legendre filter bank.

Analysis at one level::

    approx[i] = sum_k h[k] * x[(2 i + k) mod n]
    detail[i] = sum_k g[k] * x[(2 i + k) mod n]

Synthesis is the transpose of that map (time-reversed analysis filters).
For ``v = 1`` this is the orthonormal Haar transform; for larger ``v`` the
filters are not orthogonal and synthesis does not invert analysis exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cascade import DyadicGridFunction, cascade_scaling, cascade_wavelet, refine_step, two_scale_taps
from .errors import LengthError, ShapeMismatch, UnsupportedBoundary
from .filterbank import FilterBank
from .legendre import LegendreOrder

BOUNDARY_MODES = ("periodic",)
SUBBANDS = ("LH", "HL", "HH")


def _check_boundary(boundary: str) -> None:
    if boundary not in BOUNDARY_MODES:
        raise UnsupportedBoundary(f"boundary mode {boundary!r} not supported (only 'periodic')")


def _check_length(n: int, levels: int, what: str = "signal length") -> None:
    if levels < 0:
        raise LengthError("levels must be non-negative")
    if n < (1 << levels) or n % (1 << levels):
        raise LengthError(f"{what} {n} must be a positive multiple of 2**{levels}")


def analysis_step(x: np.ndarray, taps) -> np.ndarray:
    """Periodic filter-and-decimate along the last axis."""
    taps = np.asarray(taps, dtype=float)
    n = x.shape[-1]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(taps.size)) % n
    return x[..., idx] @ taps


def synthesis_step(approx: np.ndarray, detail: np.ndarray, h, g) -> np.ndarray:
    """Transpose of :func:`analysis_step` for the pair ``(h, g)``, last axis."""
    h = np.asarray(h, dtype=float)
    g = np.asarray(g, dtype=float)
    half = approx.shape[-1]
    n = 2 * half
    out = np.zeros(approx.shape[:-1] + (n,))
    for k in range(h.size):
        idx = (2 * np.arange(half) + k) % n
        # idx has no repeats for a fixed k, so fancy-index accumulation is safe
        out[..., idx] += approx * h[k] + detail * g[k]
    return out


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    order: LegendreOrder
    levels: int
    boundary: str
    original_length: int
    approx: np.ndarray = field(repr=False)
    details: list[np.ndarray] = field(repr=False)

    def coefficient_count(self) -> int:
        return self.approx.size + sum(d.size for d in self.details)

    def to_dict(self) -> dict:
        return {
            "family": "legd",
            "N": self.order.N,
            "v": self.order.v,
            "levels": self.levels,
            "boundary": self.boundary,
            "original_length": self.original_length,
            "approx": [float(x) for x in self.approx],
            "details": [[float(x) for x in d] for d in self.details],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecompositionResult":
        try:
            return cls(
                order=LegendreOrder.from_index(int(data["N"])),
                levels=int(data["levels"]),
                boundary=str(data["boundary"]),
                original_length=int(data["original_length"]),
                approx=np.asarray(data["approx"], dtype=float),
                details=[np.asarray(d, dtype=float) for d in data["details"]],
            )
        except (KeyError, TypeError) as exc:
            raise ShapeMismatch(f"malformed decomposition: {exc}") from exc


def dwt1d(signal, fb: FilterBank, levels: int, boundary: str = "periodic") -> DecompositionResult:
    """Multi-level pyramid decomposition; ``details[0]`` is the finest level."""
    _check_boundary(boundary)
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1:
        raise LengthError("signal must be one-dimensional")
    _check_length(x.size, levels)
    details = []
    approx = x
    for _ in range(levels):
        details.append(analysis_step(approx, fb.g))
        approx = analysis_step(approx, fb.h)
    return DecompositionResult(fb.order, levels, boundary, x.size, approx, details)


def idwt1d(decomp: DecompositionResult, fb: FilterBank) -> np.ndarray:
    _check_boundary(decomp.boundary)
    if len(decomp.details) != decomp.levels:
        raise ShapeMismatch(f"expected {decomp.levels} detail bands, got {len(decomp.details)}")
    n = decomp.original_length
    if decomp.levels and n % (1 << decomp.levels):
        raise ShapeMismatch("original length incompatible with the number of levels")
    for k, d in enumerate(decomp.details, start=1):
        if d.shape != (n >> k,):
            raise ShapeMismatch(f"level-{k} detail has length {d.size}, expected {n >> k}")
    if decomp.approx.shape != (n >> decomp.levels,):
        raise ShapeMismatch("approximation band has the wrong length")
    x = decomp.approx
    for d in reversed(decomp.details):
        x = synthesis_step(x, d, fb.h, fb.g)
    return x


@dataclass(frozen=True, eq=False)
class Subbands2D:
    """Separable 2D decomposition.

    Band names read (row filter, column filter): ``LH`` is low-pass along
    each row and high-pass along each column. ``details[0]`` is the finest.
    """

    order: LegendreOrder
    levels: int
    boundary: str
    shape: tuple[int, int]
    LL: np.ndarray = field(repr=False)
    details: list[dict[str, np.ndarray]] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "family": "legd",
            "N": self.order.N,
            "v": self.order.v,
            "levels": self.levels,
            "boundary": self.boundary,
            "shape": list(self.shape),
            "LL": self.LL.tolist(),
            "details": [{name: band[name].tolist() for name in SUBBANDS} for band in self.details],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Subbands2D":
        try:
            return cls(
                order=LegendreOrder.from_index(int(data["N"])),
                levels=int(data["levels"]),
                boundary=str(data["boundary"]),
                shape=(int(data["shape"][0]), int(data["shape"][1])),
                LL=np.asarray(data["LL"], dtype=float),
                details=[
                    {name: np.asarray(band[name], dtype=float) for name in SUBBANDS}
                    for band in data["details"]
                ],
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ShapeMismatch(f"malformed 2D decomposition: {exc}") from exc


def _rows_then_cols(img: np.ndarray, fb: FilterBank):
    lo = analysis_step(img, fb.h)
    hi = analysis_step(img, fb.g)
    # column pass: filter along axis 0
    LL = analysis_step(lo.T, fb.h).T
    LH = analysis_step(lo.T, fb.g).T
    HL = analysis_step(hi.T, fb.h).T
    HH = analysis_step(hi.T, fb.g).T
    return LL, {"LH": LH, "HL": HL, "HH": HH}


def dwt2d(image, fb: FilterBank, levels: int, boundary: str = "periodic") -> Subbands2D:
    """Separable transform: every row, then every column, per level."""
    _check_boundary(boundary)
    img = np.asarray(image, dtype=float)
    if img.ndim != 2:
        raise LengthError("image must be two-dimensional")
    _check_length(img.shape[0], levels, "row count")
    _check_length(img.shape[1], levels, "column count")
    details = []
    LL = img
    for _ in range(levels):
        LL, bands = _rows_then_cols(LL, fb)
        details.append(bands)
    return Subbands2D(fb.order, levels, boundary, (img.shape[0], img.shape[1]), LL, details)


def idwt2d(sub: Subbands2D, fb: FilterBank) -> np.ndarray:
    """Undo columns, then rows, level by level (transpose of :func:`dwt2d`)."""
    _check_boundary(sub.boundary)
    if len(sub.details) != sub.levels:
        raise ShapeMismatch(f"expected {sub.levels} detail levels, got {len(sub.details)}")
    rows, cols = sub.shape
    if sub.levels and (rows % (1 << sub.levels) or cols % (1 << sub.levels)):
        raise ShapeMismatch("image shape incompatible with the number of levels")
    LL = sub.LL
    for lev in range(sub.levels, 0, -1):
        band = sub.details[lev - 1]
        want = (rows >> lev, cols >> lev)
        if LL.shape != want or any(band[name].shape != want for name in SUBBANDS):
            raise ShapeMismatch(f"level-{lev} subbands must all be {want}")
        lo = synthesis_step(LL.T, band["LH"].T, fb.h, fb.g).T
        hi = synthesis_step(band["HL"].T, band["HH"].T, fb.h, fb.g).T
        LL = synthesis_step(lo, hi, fb.h, fb.g)
    return LL


@dataclass(frozen=True, eq=False)
class PacketTree:
    """Full binary packet tree; ``nodes[(d, n)]`` with natural (Paley) ordering."""

    order: LegendreOrder
    depth: int
    boundary: str
    nodes: dict[tuple[int, int], np.ndarray] = field(repr=False)

    def leaves(self) -> list[np.ndarray]:
        return [self.nodes[(self.depth, n)] for n in range(1 << self.depth)]

    def to_dict(self) -> dict:
        return {
            "family": "legd",
            "N": self.order.N,
            "v": self.order.v,
            "depth": self.depth,
            "boundary": self.boundary,
            "nodes": [
                {"depth": d, "index": n, "coeffs": [float(x) for x in self.nodes[(d, n)]]}
                for d in range(self.depth + 1)
                for n in range(1 << d)
            ],
        }


def wp_decompose(signal, fb: FilterBank, depth: int, boundary: str = "periodic") -> PacketTree:
    _check_boundary(boundary)
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1:
        raise LengthError("signal must be one-dimensional")
    _check_length(x.size, depth)
    nodes = {(0, 0): x}
    for d in range(depth):
        for n in range(1 << d):
            parent = nodes[(d, n)]
            nodes[(d + 1, 2 * n)] = analysis_step(parent, fb.h)
            nodes[(d + 1, 2 * n + 1)] = analysis_step(parent, fb.g)
    return PacketTree(fb.order, depth, boundary, nodes)


def wp_functions(fb: FilterBank, max_index: int, iterations: int) -> list[DyadicGridFunction]:
    """Packet functions ``W_0 .. W_max_index`` on one dyadic grid.

    ``W_0`` is the cascade scaling function and ``W_1`` the wavelet; then
    ``W_2n = sqrt(2) sum h_k W_n(2t - k)`` and
    ``W_2n+1 = sqrt(2) sum g_k W_n(2t - k)``.
    """
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    phi = cascade_scaling(fb, iterations)
    a, b = two_scale_taps(fb)
    level = phi.level
    funcs = [
        DyadicGridFunction(fb.order, level, phi.values, "packet", iterations, 0),
        DyadicGridFunction(fb.order, level, cascade_wavelet(fb, phi).values, "packet", iterations, 1),
    ]
    for idx in range(2, max_index + 1):
        parent = funcs[idx // 2]
        taps = a if idx % 2 == 0 else b
        vals = refine_step(parent.restrict(level - 1), taps, level - 1)
        funcs.append(DyadicGridFunction(fb.order, level, vals, "packet", iterations, idx))
    return funcs[: max_index + 1]
