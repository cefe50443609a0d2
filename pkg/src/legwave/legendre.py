"""Legendre polynomials: recurrence evaluation and the exact cosine expansion.

The cosine expansion writes ``P_n(cos t)`` as ``sum_m a_m cos((n - 2m) t)``
where every ``a_m`` is a binomial product over ``4**n``. Those rationals are
kept as integer numerators over a power-of-two denominator so they convert
to binary floating point without rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import InvalidOrder, OverflowRisk

#: Largest degree accepted by :func:`trig_expansion_coeffs`.
MAX_TRIG_DEGREE = 30


@dataclass(frozen=True)
class LegendreOrder:
    """Odd polynomial degree ``v`` together with the family index ``N``.

    The two are tied by ``2 N = v + 1``; ``legdN`` names the member.
    """

    v: int
    N: int

    def __post_init__(self):
        if isinstance(self.v, bool) or not isinstance(self.v, (int, np.integer)):
            raise InvalidOrder(f"degree must be an integer, got {self.v!r}")
        if self.v < 1 or self.v % 2 == 0:
            raise InvalidOrder(f"order must be odd and >= 1, got v={self.v}")
        if 2 * self.N != self.v + 1:
            raise InvalidOrder(f"inconsistent family index N={self.N} for v={self.v}")

    @classmethod
    def from_degree(cls, v: int) -> "LegendreOrder":
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise InvalidOrder(f"degree must be an integer, got {v!r}")
        return cls(int(v), (int(v) + 1) // 2)

    @classmethod
    def from_index(cls, N: int) -> "LegendreOrder":
        if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
            raise InvalidOrder(f"family index must be a positive integer, got {N!r}")
        return cls(2 * int(N) - 1, int(N))

    @property
    def name(self) -> str:
        return f"legd{self.N}"


@dataclass(frozen=True)
class TrigCoeffs:
    """Exact cosine-expansion coefficients of ``P_n``.

    ``numerators[m] / 2**den_pow2`` is ``a_m``; ``den_pow2`` is always ``2 n``.
    """

    n: int
    numerators: tuple[int, ...]
    den_pow2: int

    def __len__(self):
        return len(self.numerators)

    def fractions(self) -> list[Fraction]:
        den = 1 << self.den_pow2
        return [Fraction(num, den) for num in self.numerators]

    def as_floats(self) -> np.ndarray:
        # power-of-two scaling is exact once the numerator fits in 53 bits
        return np.array([np.ldexp(float(num), -self.den_pow2) for num in self.numerators])


def eval_legendre(n: int, x):
    """Evaluate ``P_n(x)`` with the three-term recurrence.

    Parameters
    ----------
    n : int
        Non-negative degree.
    x : float or array_like
        Evaluation point(s). Any real value is accepted.

    Returns
    -------
    float or numpy.ndarray
        Same shape as ``x``.
    """
    if n < 0:
        raise InvalidOrder(f"degree must be non-negative, got {n}")
    x_arr = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x_arr)
    if n == 0:
        out = p_prev
    else:
        p = x_arr.copy()
        for k in range(1, n):
            p_prev, p = p, ((2 * k + 1) * x_arr * p - k * p_prev) / (k + 1)
        out = p
    if np.ndim(x) == 0:
        return float(out)
    return out


def trig_expansion_coeffs(n: int) -> TrigCoeffs:
    """Exact ``a_m = C(2m, m) C(2n-2m, n-m) / 4**n`` for ``m = 0..n``."""
    if n < 0:
        raise InvalidOrder(f"degree must be non-negative, got {n}")
    if n > MAX_TRIG_DEGREE:
        raise OverflowRisk(f"degree {n} exceeds the exact-arithmetic guard {MAX_TRIG_DEGREE}")
    nums = tuple(comb(2 * m, m) * comb(2 * n - 2 * m, n - m) for m in range(n + 1))
    return TrigCoeffs(n=n, numerators=nums, den_pow2=2 * n)


def eval_via_trig(coeffs: TrigCoeffs, theta):
    """Evaluate ``P_n(cos theta)`` from its cosine expansion.

    Valid for every real ``theta``; the expansion is a finite cosine series.
    """
    th = np.asarray(theta, dtype=float)
    a = coeffs.as_floats()
    freqs = coeffs.n - 2 * np.arange(coeffs.n + 1)
    out = np.tensordot(np.cos(np.multiply.outer(th, freqs)), a, axes=([-1], [0]))
    if np.ndim(theta) == 0:
        return float(out)
    return out
