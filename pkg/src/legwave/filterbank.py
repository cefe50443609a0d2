"""Legendre low-pass / high-pass FIR filters and their frequency responses.

The low-pass taps come straight from the cosine expansion of ``P_v``::

    h_k / sqrt(2) = C(2k, k) C(2v-2k, v-k) / 4**v

so each tap is sqrt(2) times a dyadic rational. By default the global minus
sign carried by the phase assignment ``H(w) = -exp(-j v w/2) P_v(cos(w/2))``
is dropped; ``sign="paper"`` keeps it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .errors import InvalidOrder
from .legendre import LegendreOrder, eval_legendre, trig_expansion_coeffs

SQRT2 = float(np.sqrt(2.0))
#: Highest supported degree (``legd8``).
MAX_DEGREE = 15
SIGN_CONVENTIONS = ("suppressed", "paper")


def as_order(order) -> LegendreOrder:
    """Accept a :class:`LegendreOrder` or a bare odd degree."""
    if isinstance(order, LegendreOrder):
        return order
    return LegendreOrder.from_degree(order)


def _checked_order(order) -> LegendreOrder:
    order = as_order(order)
    if order.v > MAX_DEGREE:
        raise InvalidOrder(f"v={order.v} exceeds the supported maximum {MAX_DEGREE}")
    return order


def _dyadic_parts(q: Fraction) -> tuple[int, int]:
    den = q.denominator
    pow2 = den.bit_length() - 1
    assert den == 1 << pow2, "denominator is not a power of two"
    return q.numerator, pow2


@dataclass(frozen=True, eq=False)
class FilterBank:
    """Analysis filter pair for one Legendre wavelet.

    ``h_exact[k]`` is the exact rational ``h[k] / sqrt(2)``.
    """

    order: LegendreOrder
    h: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    h_exact: tuple[Fraction, ...]
    sign: str = "suppressed"

    @property
    def v(self) -> int:
        return self.order.v

    @property
    def N(self) -> int:
        return self.order.N

    def to_dict(self) -> dict:
        exact = []
        for q in self.h_exact:
            num, pow2 = _dyadic_parts(q)
            exact.append({"num": num, "den_pow2": pow2})
        return {
            "family": "legd",
            "N": self.N,
            "v": self.v,
            "h": [float(x) for x in self.h],
            "g": [float(x) for x in self.g],
            "h_exact": exact,
        }


@dataclass(frozen=True, eq=False)
class FrequencySamples:
    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.omega.shape != self.values.shape:
            raise ValueError("omega and values must have equal lengths")
        if self.omega.size > 1 and np.any(np.diff(self.omega) <= 0):
            raise ValueError("omega must be strictly increasing")

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


def lowpass_exact(order, sign: str = "suppressed") -> tuple[Fraction, ...]:
    """Exact ``h_k / sqrt(2)`` for ``k = 0..v``, built from the symmetric pair sum."""
    order = _checked_order(order)
    if sign not in SIGN_CONVENTIONS:
        raise ValueError(f"unknown sign convention {sign!r}")
    a = trig_expansion_coeffs(order.v).fractions()
    v = order.v
    taps = tuple((a[k] + a[v - k]) / 2 for k in range(v + 1))
    if sign == "paper":
        taps = tuple(-t for t in taps)
    return taps


def lowpass_coeffs(order, sign: str = "suppressed") -> np.ndarray:
    """Floating low-pass taps; each is ``num * sqrt(2) / 2**p`` rounded once."""
    taps = lowpass_exact(order, sign)
    out = np.empty(len(taps))
    for k, q in enumerate(taps):
        num, pow2 = _dyadic_parts(q)
        out[k] = np.ldexp(num * SQRT2, -pow2)
    return out


def highpass_coeffs(h) -> np.ndarray:
    """Alternating-sign high-pass ``g_k = (-1)**k h_k``.

    Its magnitude response is ``|P_v(sin(w/2))|``; the phase may differ from
    the QMF transfer function by a unimodular linear-phase factor.
    """
    h = np.asarray(h, dtype=float)
    g = h.copy()
    g[1::2] *= -1
    return g


def filter_bank(order, sign: str = "suppressed") -> FilterBank:
    order = _checked_order(order)
    h = lowpass_coeffs(order, sign)
    g = highpass_coeffs(h)
    h.flags.writeable = False
    g.flags.writeable = False
    return FilterBank(
        order=order,
        h=h,
        g=g,
        h_exact=lowpass_exact(order, sign),
        sign=sign,
    )


def default_grid(points: int = 1024) -> np.ndarray:
    """Uniform grid over ``[-pi, pi)``."""
    return np.linspace(-np.pi, np.pi, points, endpoint=False)


def freq_response(coeffs, omega) -> FrequencySamples:
    """Evaluate ``H(w) = (1/sqrt(2)) sum_k c_k exp(-j w k)``."""
    c = np.asarray(coeffs, dtype=float)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if c.size == 0 or w.size == 0:
        raise ValueError("coefficients and frequency grid must be nonempty")
    k = np.arange(c.size)
    values = np.exp(-1j * np.multiply.outer(w, k)) @ c / SQRT2
    return FrequencySamples(omega=w, values=values)


def closed_form_magnitude(order, omega):
    """``|P_v(cos(w/2)) / P_v(1)|``."""
    order = as_order(order)
    val = np.abs(eval_legendre(order.v, np.cos(np.asarray(omega, dtype=float) / 2)))
    return val / abs(eval_legendre(order.v, 1.0))


def count_passband_zeros(order, points: int = 8192, xtol: float = 1e-10) -> int:
    """Count distinct zeros of the low-pass magnitude on ``(-pi, pi]``.

    Sign changes of ``P_v(cos(w/2))`` are bracketed on a grid that slightly
    overhangs both ends, refined by bisection, and filtered to the
    half-open interval so the Nyquist zero is counted once.
    """
    order = _checked_order(order)

    def f(w):
        return eval_legendre(order.v, np.cos(w / 2))

    pad = 4 * np.pi / points
    grid = np.linspace(-np.pi - pad, np.pi + pad, points + 1)
    vals = f(grid)
    roots: list[float] = []
    for i in range(points):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(bisect(f, a, b, xtol=xtol))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))

    kept: list[float] = []
    for r in sorted(roots):
        if r <= -np.pi + 1e-9 or r > np.pi + 1e-9:
            continue
        if kept and r - kept[-1] < 1e-8:
            continue
        kept.append(r)
    return len(kept)


def phase_linearity_residual(fb: FilterBank, omega=None) -> float:
    """Max ``|Im(H(w) exp(j v w / 2))|`` over the grid (zero for linear phase)."""
    if omega is None:
        omega = default_grid()
    resp = freq_response(fb.h, omega)
    rotated = resp.values * np.exp(0.5j * fb.v * resp.omega)
    return float(np.max(np.abs(rotated.imag)))
