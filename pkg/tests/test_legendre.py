from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legwave.errors import InvalidOrder, OverflowRisk
from legwave.legendre import (
    LegendreOrder,
    eval_legendre,
    eval_via_trig,
    trig_expansion_coeffs,
)
from oracles import rodrigues


def test_order_from_degree_and_index():
    o = LegendreOrder.from_degree(3)
    assert (o.v, o.N, o.name) == (3, 2, "legd2")
    assert LegendreOrder.from_index(8).v == 15


@pytest.mark.parametrize("v", [0, 2, -1, 4])
def test_order_rejects_even_or_nonpositive(v):
    with pytest.raises(InvalidOrder):
        LegendreOrder.from_degree(v)


def test_order_rejects_inconsistent_index():
    with pytest.raises(InvalidOrder):
        LegendreOrder(3, 3)
    with pytest.raises(InvalidOrder):
        LegendreOrder.from_index(0)


def test_eval_examples():
    assert eval_legendre(5, 1.0) == 1.0
    assert eval_legendre(0, 0.37) == 1.0
    assert eval_legendre(2, 0.5) == -0.125


@pytest.mark.parametrize("n", range(7))
def test_recurrence_matches_rodrigues(n):
    x = np.linspace(-1, 1, 201)
    np.testing.assert_allclose(eval_legendre(n, x), rodrigues(n, x), atol=1e-12)


def test_recurrence_beyond_unit_interval():
    # P_2(2) = (3*4 - 1)/2
    assert eval_legendre(2, 2.0) == pytest.approx(5.5)


@pytest.mark.parametrize(
    "n, nums",
    [
        (1, [2, 2]),
        (3, [20, 12, 12, 20]),
        (5, [252, 140, 120, 120, 140, 252]),
    ],
)
def test_trig_coefficients(n, nums):
    c = trig_expansion_coeffs(n)
    assert c.den_pow2 == 2 * n
    assert list(c.numerators) == nums


def test_trig_coefficients_degree_one_is_half_half():
    assert trig_expansion_coeffs(1).fractions() == [Fraction(1, 2), Fraction(1, 2)]


def test_trig_coefficients_group_to_textbook_forms():
    a = trig_expansion_coeffs(3).fractions()
    # cos3t and cos t each appear twice in the symmetric sum
    assert (2 * a[0], 2 * a[1]) == (Fraction(5, 8), Fraction(3, 8))
    a = trig_expansion_coeffs(5).fractions()
    assert [2 * a[m] for m in range(3)] == [Fraction(63, 128), Fraction(35, 128), Fraction(30, 128)]


@pytest.mark.parametrize("n", range(0, 31))
def test_trig_coefficient_invariants(n):
    a = trig_expansion_coeffs(n).fractions()
    assert sum(a) == 1
    assert all(x > 0 for x in a)
    assert a == a[::-1]


def test_trig_guard():
    with pytest.raises(OverflowRisk):
        trig_expansion_coeffs(31)


def test_eval_via_trig_examples():
    assert eval_via_trig(trig_expansion_coeffs(1), np.pi / 3) == pytest.approx(0.5, abs=1e-15)
    assert eval_via_trig(trig_expansion_coeffs(3), 0.0) == 1.0
    assert abs(eval_via_trig(trig_expansion_coeffs(5), np.pi / 2)) < 1e-15


@pytest.mark.parametrize("n", range(1, 16, 2))
def test_trig_form_agrees_with_recurrence(n):
    theta = np.linspace(0, np.pi, 1000)
    np.testing.assert_allclose(
        eval_via_trig(trig_expansion_coeffs(n), theta), eval_legendre(n, np.cos(theta)), atol=1e-12, rtol=0
    )


def test_trig_form_is_periodic():
    c = trig_expansion_coeffs(5)
    theta = np.linspace(-3, 3, 50)
    np.testing.assert_allclose(eval_via_trig(c, theta + 2 * np.pi), eval_via_trig(c, theta), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(0, 15), x=st.floats(-1, 1))
def test_parity_and_bound(n, x):
    p = eval_legendre(n, x)
    assert abs(eval_legendre(n, -x) - (-1) ** n * p) <= 1e-12
    assert abs(p) <= 1 + 1e-12


@pytest.mark.parametrize("n", range(1, 16))
def test_root_count(n):
    x = np.linspace(-1, 1, 20001)[1:-1]
    s = np.sign(eval_legendre(n, x))
    assert np.count_nonzero(s[1:] * s[:-1] < 0) + np.count_nonzero(s == 0) == n
