"""Scaling function and wavelet on dyadic grids via the cascade algorithm.

A grid function at level ``J`` stores samples at ``t = k / 2**J`` for
``k = 0 .. v * 2**J``. The cascade starts from the unit box on ``[0, 1)``,
i.e. the integer samples ``[1, 0, ..., 0]``, and applies::

    phi_{j+1}(t) = sqrt(2) * sum_k h_k * phi_j(2 t - k)

which moves the samples from level ``j`` to level ``j + 1``.

:func:`exact_dyadic_values` is the independent reference: it solves the
two-scale fixed point at the integers as an eigenproblem and fills in the
dyadic midpoints level by level.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EigenFailure, ResourceLimit
from .filterbank import FilterBank
from .legendre import LegendreOrder

MAX_ITERATIONS = 24
MAX_GRID_POINTS = 1 << 28
MAX_EXACT_LEVEL = 20


@dataclass(frozen=True, eq=False)
class DyadicGridFunction:
    """Samples of a compactly supported function on ``[0, v]`` at step ``2**-level``."""

    order: LegendreOrder
    level: int
    values: np.ndarray = field(repr=False)
    kind: str = "scaling"
    iterations: int = 0
    index: int | None = None

    def __post_init__(self):
        expected = self.order.v * (1 << self.level) + 1
        if self.values.shape != (expected,):
            raise ValueError(f"expected {expected} samples at level {self.level}, got {self.values.shape}")

    @property
    def step(self) -> float:
        return 2.0 ** -self.level

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.values.size) * self.step

    def mass(self, rule: str = "riemann") -> float:
        """Integral estimate on the grid.

        ``"riemann"`` (default) is the left Riemann sum, which is the exact
        integral of the piecewise-constant cascade iterate. ``"trapezoid"``
        halves the two endpoint samples.
        """
        vals = self.values
        if rule == "riemann":
            return float(np.sum(vals[:-1]) * self.step)
        if rule == "trapezoid":
            return float((np.sum(vals) - 0.5 * (vals[0] + vals[-1])) * self.step)
        raise ValueError(f"unknown rule {rule!r}")

    def restrict(self, level: int) -> np.ndarray:
        """Samples on the coarser grid ``2**-level`` (no interpolation)."""
        if level > self.level or level < 0:
            raise ValueError(f"cannot restrict level {self.level} to {level}")
        return self.values[:: 1 << (self.level - level)]


def two_scale_taps(fb: FilterBank) -> tuple[np.ndarray, np.ndarray]:
    """Exact ``sqrt(2) h_k`` and ``sqrt(2) g_k`` as floats (twice a dyadic rational).

    Taps are oriented to sum to +2 whatever the filter's sign convention;
    the refinement equation has no integrable solution otherwise.
    """
    lo = np.array([float(2 * q) for q in fb.h_exact])
    if lo.sum() < 0:
        lo = -lo
    hi = lo.copy()
    hi[1::2] *= -1
    return lo, hi


def _check_grid(v: int, level: int) -> None:
    if v * (1 << level) + 1 > MAX_GRID_POINTS:
        raise ResourceLimit(f"grid for v={v} at level {level} exceeds {MAX_GRID_POINTS} points")


def refine_step(coarse: np.ndarray, coeffs, level: int) -> np.ndarray:
    """Evaluate ``sum_k c_k f(2t - k)`` on level ``level + 1``.

    ``coarse`` holds ``f`` on level ``level`` over ``[0, v]`` with
    ``v = len(coeffs) - 1``.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    v = coeffs.size - 1
    stride = 1 << level
    out = np.zeros(v * 2 * stride + 1)
    for m, c in enumerate(coeffs):
        out[m * stride : m * stride + coarse.size] += c * coarse
    return out


def _cascade_iterates(fb: FilterBank, iterations: int):
    a, _ = two_scale_taps(fb)
    vals = np.zeros(fb.v + 1)
    vals[0] = 1.0
    for j in range(iterations):
        vals = refine_step(vals, a, j)
        yield j + 1, vals


def cascade_scaling(fb: FilterBank, iterations: int) -> DyadicGridFunction:
    """Run ``iterations`` cascade steps from the unit box; output level = iterations."""
    if iterations < 1:
        raise ValueError("iterations must be positive")
    if iterations > MAX_ITERATIONS:
        raise ResourceLimit(f"iterations={iterations} exceeds the guard {MAX_ITERATIONS}")
    _check_grid(fb.v, iterations)
    vals = None
    for _, vals in _cascade_iterates(fb, iterations):
        pass
    return DyadicGridFunction(fb.order, iterations, vals, "scaling", iterations)


def cascade_wavelet(fb: FilterBank, phi: DyadicGridFunction) -> DyadicGridFunction:
    """``psi(t) = sqrt(2) sum_k g_k phi(2t - k)`` from ``phi`` sampled one level coarser."""
    if phi.kind != "scaling":
        raise ValueError("phi must be a scaling function")
    if phi.level < 1:
        raise ValueError("phi must be sampled at level >= 1")
    _, b = two_scale_taps(fb)
    vals = refine_step(phi.restrict(phi.level - 1), b, phi.level - 1)
    return DyadicGridFunction(fb.order, phi.level, vals, "wavelet", phi.iterations)


def integer_values(fb: FilterBank, tol: float = 1e-9) -> np.ndarray:
    """``phi(0), ..., phi(v)`` from the eigenvalue-1 eigenvector of the two-scale matrix."""
    v = fb.v
    a, _ = two_scale_taps(fb)
    out = np.zeros(v + 1)
    if v == 1:
        out[0] = 1.0
        return out
    interior = range(1, v)
    M = np.array([[a[2 * i - j] if 0 <= 2 * i - j <= v else 0.0 for j in interior] for i in interior])
    eigvals, eigvecs = np.linalg.eig(M)
    best = int(np.argmin(np.abs(eigvals - 1.0)))
    if abs(eigvals[best] - 1.0) > tol:
        raise EigenFailure(f"no eigenvalue within {tol} of 1 (closest {eigvals[best]})")
    vec = np.real(eigvecs[:, best])
    total = vec.sum()
    if abs(total) < tol:
        raise EigenFailure("fixed-point eigenvector has zero sum")
    out[1:v] = vec / total
    return out


def exact_dyadic_values(fb: FilterBank, level: int) -> DyadicGridFunction:
    """Scaling function at every dyadic point of step ``2**-level``.

    Integer samples come from :func:`integer_values`; each finer level keeps
    the previous samples and fills the odd-indexed midpoints from the
    two-scale relation. For ``v = 1`` this is the box on ``[0, 1)``.
    """
    if level < 0 or level > MAX_EXACT_LEVEL:
        raise ValueError(f"level must be in [0, {MAX_EXACT_LEVEL}]")
    v = fb.v
    a, _ = two_scale_taps(fb)
    vals = integer_values(fb)
    for lev in range(1, level + 1):
        finer = np.zeros(v * (1 << lev) + 1)
        finer[::2] = vals
        half = 1 << (lev - 1)
        odd = np.arange(1, finer.size, 2)
        for m in range(v + 1):
            # phi(2t - m) at t = k / 2**lev sits at index k - m * 2**(lev-1) one level up
            src = odd - m * half
            ok = (src >= 0) & (src < vals.size)
            finer[odd[ok]] += a[m] * vals[src[ok]]
        vals = finer
    return DyadicGridFunction(fb.order, level, vals, "scaling", 0)


def convergence_profile(fb: FilterBank, max_iterations: int) -> list[float]:
    """Sup-norm gap between cascade iterate ``j`` and the exact values, ``j = 1..max``."""
    if max_iterations < 2:
        raise ValueError("max_iterations must be >= 2")
    if max_iterations > MAX_EXACT_LEVEL:
        raise ResourceLimit(f"max_iterations={max_iterations} exceeds {MAX_EXACT_LEVEL}")
    exact = exact_dyadic_values(fb, max_iterations)
    return [
        float(np.max(np.abs(vals - exact.restrict(j))))
        for j, vals in _cascade_iterates(fb, max_iterations)
    ]


def two_scale_residual(fb: FilterBank, phi: DyadicGridFunction) -> float:
    """Sup-norm of ``phi(t) - sqrt(2) sum h_k phi(2t - k)`` on the half-resolution grid."""
    if phi.level < 2:
        raise ValueError("need level >= 2")
    coarse = phi.restrict(phi.level - 2)
    rebuilt = refine_step(coarse, two_scale_taps(fb)[0], phi.level - 2)
    return float(np.max(np.abs(phi.restrict(phi.level - 1) - rebuilt)))
