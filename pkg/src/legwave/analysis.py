"""Diagnostics: orthogonality defect, round-trip error, ODE residual."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, LengthError
from .filterbank import FilterBank, as_order, default_grid, filter_bank, freq_response
from .transform import DecompositionResult, dwt1d, idwt1d

# Knuth's MMIX multiplier/increment for the per-trial seed schedule.
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1
OPERATOR_SIZE_LIMIT = 32


def lcg_seeds(seed: int, count: int) -> list[int]:
    """``count`` successive states of a 64-bit LCG started at ``seed``."""
    state = seed & _MASK64
    out = []
    for _ in range(count):
        state = (LCG_MULTIPLIER * state + LCG_INCREMENT) & _MASK64
        out.append(state)
    return out


@dataclass(frozen=True)
class OrthogonalityReport:
    v: int
    lag_autocorrelations: dict[int, Fraction]
    defect: Fraction
    halfband_deviation: float

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "lag_autocorrelations": {str(k): float(r) for k, r in self.lag_autocorrelations.items()},
            "lag_autocorrelations_exact": {str(k): str(r) for k, r in self.lag_autocorrelations.items()},
            "defect": float(self.defect),
            "halfband_deviation": self.halfband_deviation,
        }


@dataclass(frozen=True)
class ReconstructionReport:
    length: int
    levels: int
    v: int
    max_abs_error: float
    relative_l2_error: float
    operator_deviation: float | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "levels": self.levels,
            "v": self.v,
            "max_abs_error": self.max_abs_error,
            "relative_l2_error": self.relative_l2_error,
            "operator_deviation": self.operator_deviation,
        }


def autocorrelation(fb: FilterBank, lag: int) -> Fraction:
    """Exact ``sum_k h_k h_{k+lag}``; each product is twice a product of rationals."""
    q = fb.h_exact
    lag = abs(lag)
    return sum((2 * q[k] * q[k + lag] for k in range(len(q) - lag)), Fraction(0))


def halfband_deviation(fb: FilterBank, omega=None) -> float:
    """Max of ``| |H(w)|^2 + |H(w + pi)|^2 - 1 |`` over the grid."""
    if omega is None:
        omega = default_grid()
    w = np.asarray(omega, dtype=float)
    p = freq_response(fb.h, w).magnitude ** 2
    q = freq_response(fb.h, w + np.pi).magnitude ** 2
    return float(np.max(np.abs(p + q - 1.0)))


def orthogonality_defect(fb: FilterBank, omega=None) -> OrthogonalityReport:
    lags = range(0, fb.v, 2)
    corr = {lag: autocorrelation(fb, lag) for lag in lags}
    defect = sum((abs(r - (1 if lag == 0 else 0)) for lag, r in corr.items()), Fraction(0))
    return OrthogonalityReport(fb.v, corr, defect, halfband_deviation(fb, omega))


def analysis_matrix(fb: FilterBank, length: int, levels: int) -> np.ndarray:
    """Columns are the flattened decompositions of the unit vectors."""
    cols = []
    for e in np.eye(length):
        d = dwt1d(e, fb, levels)
        cols.append(np.concatenate([d.approx, *reversed(d.details)]))
    return np.array(cols).T


def synthesis_matrix(fb: FilterBank, length: int, levels: int) -> np.ndarray:
    """Columns are reconstructions of single unit coefficients (same layout as analysis)."""
    sizes = [length >> levels] + [length >> k for k in range(levels, 0, -1)]
    cols = []
    for e in np.eye(length):
        parts = np.split(e, np.cumsum(sizes)[:-1])
        decomp = DecompositionResult(fb.order, levels, "periodic", length, parts[0], list(reversed(parts[1:])))
        cols.append(idwt1d(decomp, fb))
    return np.array(cols).T


def error_norms(reference, reconstructed) -> tuple[float, float]:
    """``(max_abs_error, relative_l2_error)``; relative error is absolute for a zero reference."""
    ref = np.asarray(reference, dtype=float)
    err = np.asarray(reconstructed, dtype=float) - ref
    max_abs = float(np.max(np.abs(err))) if err.size else 0.0
    norm = float(np.linalg.norm(ref))
    l2 = float(np.linalg.norm(err))
    return max_abs, (l2 / norm if norm > 0 else l2)


def roundtrip_error(length: int, levels: int, order, trials: int = 8, seed: int = 0) -> ReconstructionReport:
    """Analysis followed by synthesis on seeded uniform(-1, 1) signals."""
    fb = order if isinstance(order, FilterBank) else filter_bank(order)
    if length < (1 << levels) or length % (1 << levels):
        raise LengthError(f"length {length} must be a positive multiple of 2**{levels}")
    max_abs = 0.0
    rel = 0.0
    for s in lcg_seeds(seed, trials):
        x = np.random.default_rng(s).uniform(-1.0, 1.0, length)
        trial_abs, trial_rel = error_norms(x, idwt1d(dwt1d(x, fb, levels), fb))
        max_abs = max(max_abs, trial_abs)
        rel = max(rel, trial_rel)
    op_dev = None
    if length <= OPERATOR_SIZE_LIMIT:
        R = synthesis_matrix(fb, length, levels) @ analysis_matrix(fb, length, levels)
        op_dev = float(np.max(np.abs(R - np.eye(length))))
    return ReconstructionReport(length, levels, fb.v, max_abs, rel, op_dev)


def legendre_from_filter(fb: FilterBank, theta) -> np.ndarray:
    """``y(theta) = P_v(cos theta)`` recovered from the coefficient-form response.

    Undoes the phase assignment: ``y = -exp(j v theta) H(2 theta)`` for the
    signed taps, ``+exp(...)`` once the minus sign is suppressed.
    """
    th = np.asarray(theta, dtype=float)
    sign = -1.0 if fb.sign == "paper" else 1.0
    H = freq_response(fb.h, 2 * th.ravel()).values
    return (sign * np.exp(1j * fb.v * th.ravel()) * H).real.reshape(th.shape)


def ode_residual(order, theta, step: float, sign: str = "suppressed") -> float:
    """Max central-difference residual of ``y'' + cot(t) y' + v(v+1) y`` with ``y = P_v(cos t)``."""
    fb = order if isinstance(order, FilterBank) else filter_bank(as_order(order), sign)
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    if step <= 0:
        raise ValueError("step must be positive")
    if np.any(th - step <= 0) or np.any(th + step >= np.pi):
        raise DomainError("theta +/- step must stay inside (0, pi)")
    y0 = legendre_from_filter(fb, th)
    yp = legendre_from_filter(fb, th + step)
    ym = legendre_from_filter(fb, th - step)
    d1 = (yp - ym) / (2 * step)
    d2 = (yp - 2 * y0 + ym) / step**2
    v = fb.v
    return float(np.max(np.abs(d2 + d1 / np.tan(th) + v * (v + 1) * y0)))


def ode_convergence_orders(order, theta, steps) -> list[float]:
    """Observed orders ``log2(r(h) / r(h/2))`` over successive halvings in ``steps``."""
    res = [ode_residual(order, theta, h) for h in steps]
    return [float(np.log(res[i] / res[i + 1]) / np.log(steps[i] / steps[i + 1])) for i in range(len(res) - 1)]
