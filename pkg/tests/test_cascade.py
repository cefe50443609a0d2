import numpy as np
import pytest

from legwave.cascade import (
    DyadicGridFunction,
    cascade_scaling,
    cascade_wavelet,
    convergence_profile,
    exact_dyadic_values,
    integer_values,
    refine_step,
    two_scale_residual,
    two_scale_taps,
)
from legwave.errors import EigenFailure, ResourceLimit
from legwave.filterbank import filter_bank

ODD = list(range(1, 16, 2))

# sup-norm gap to the exact dyadic values after j cascade steps, j = 1..8
PROFILE_V5 = [
    0.4921875,
    0.24224853515625,
    0.12141543168288012,
    0.0757711615699988,
    0.04701582135972926,
    0.027834318372942313,
    0.016867443389806447,
    0.010195355741428741,
]


def test_haar_scaling_is_box():
    phi = cascade_scaling(filter_bank(1), 4)
    expected = np.zeros(17)
    expected[:16] = 1.0
    np.testing.assert_array_equal(phi.values, expected)


def test_haar_wavelet_is_step():
    fb = filter_bank(1)
    psi = cascade_wavelet(fb, cascade_scaling(fb, 4))
    expected = np.zeros(17)
    expected[:8] = 1.0
    expected[8:16] = -1.0
    np.testing.assert_array_equal(psi.values, expected)


@pytest.mark.parametrize("v", ODD)
def test_mass_is_conserved_every_iteration(v):
    fb = filter_bank(v)
    for j in range(1, 11):
        assert abs(cascade_scaling(fb, j).mass() - 1) < 1e-8


def test_trapezoid_mass_carries_endpoint_transient():
    # the left sample decays like (sqrt(2) h_0)^j, so the trapezoid rule is
    # off by exactly half of it times the step
    phi = cascade_scaling(filter_bank(3), 8)
    assert phi.values[0] == pytest.approx((5 / 8) ** 8, rel=1e-15)
    assert phi.mass("trapezoid") == pytest.approx(1 - 0.5 * (5 / 8) ** 8 / 2**8, abs=1e-14)


@pytest.mark.parametrize("v", [3, 5, 7])
def test_wavelet_has_zero_mean(v):
    fb = filter_bank(v)
    psi = cascade_wavelet(fb, cascade_scaling(fb, 8))
    assert abs(psi.mass()) < 1e-8
    assert psi.kind == "wavelet"


def test_wavelet_support_v5():
    fb = filter_bank(5)
    psi = cascade_wavelet(fb, cascade_scaling(fb, 6))
    assert psi.t[-1] == 5.0
    assert psi.values[-1] == 0.0


@pytest.mark.parametrize("v", [3, 5, 15])
def test_scaling_function_is_symmetric_in_the_limit(v):
    exact = exact_dyadic_values(filter_bank(v), 8)
    np.testing.assert_allclose(exact.values, exact.values[::-1], atol=1e-8)


@pytest.mark.parametrize("v", [3, 5])
def test_cascade_symmetry_defect_is_the_endpoint_transient(v):
    # box seed is asymmetric; the mirror defect decays with the cascade
    fb = filter_bank(v)
    defects = [np.max(np.abs(p.values - p.values[::-1])) for p in (cascade_scaling(fb, j) for j in (4, 8, 12))]
    assert defects[0] > defects[1] > defects[2]


def test_integer_values_v3():
    vals = integer_values(filter_bank(3))
    np.testing.assert_allclose(vals, [0.0, 0.5, 0.5, 0.0], atol=1e-15)
    assert vals[1:3].sum() == pytest.approx(1.0, abs=1e-15)


def test_integer_values_fixed_point_by_hand():
    # M = [[6, 10], [10, 6]] / 16 for v = 3; eigenvalue 1 has eigenvector (1, 1)
    a, _ = two_scale_taps(filter_bank(3))
    M = np.array([[a[1], a[0]], [a[3], a[2]]])
    np.testing.assert_allclose(M @ [0.5, 0.5], [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("v", [3, 5, 7, 15])
def test_exact_values_are_a_fixed_point(v):
    fb = filter_bank(v)
    a, _ = two_scale_taps(fb)
    exact = exact_dyadic_values(fb, 3)
    once_more = refine_step(exact.values, a, 3)
    np.testing.assert_allclose(once_more[::2], exact.values, atol=1e-12)


@pytest.mark.parametrize("v", [3, 5])
def test_exact_values_sum_rule(v):
    exact = exact_dyadic_values(filter_bank(v), 6)
    assert exact.mass("trapezoid") == pytest.approx(1.0, abs=1e-12)


def test_exact_values_for_haar_is_box():
    exact = exact_dyadic_values(filter_bank(1), 3)
    np.testing.assert_array_equal(exact.values, [1.0] * 8 + [0.0])


def test_profile_haar_is_exact():
    assert all(d == 0.0 for d in convergence_profile(filter_bank(1), 8))


def test_profile_v3_is_geometric():
    # the gap is the t = 0 sample, which decays as (sqrt(2) h_0)^j = (5/8)^j
    prof = convergence_profile(filter_bank(3), 8)
    np.testing.assert_allclose(prof, [(5 / 8) ** j for j in range(1, 9)], rtol=1e-12)
    assert prof[7] < prof[3]


def test_profile_v5_regression():
    prof = convergence_profile(filter_bank(5), 8)
    np.testing.assert_allclose(prof, PROFILE_V5, rtol=1e-10)
    assert prof[7] < prof[3]


def test_paper_sign_gives_same_shapes():
    a = cascade_scaling(filter_bank(5), 6)
    b = cascade_scaling(filter_bank(5, "paper"), 6)
    np.testing.assert_array_equal(a.values, b.values)


def test_two_scale_residual_after_eight_iterations():
    # two-scale residual contract: <= 1e-6 after >= 8 iterations for v in {3, 5}
    for v in (3, 5):
        fb = filter_bank(v)
        assert two_scale_residual(fb, cascade_scaling(fb, 8)) <= 1e-6


def test_two_scale_residual_shrinks_with_iterations():
    for v in (3, 5):
        fb = filter_bank(v)
        res = [two_scale_residual(fb, cascade_scaling(fb, j)) for j in (4, 8, 12, 16)]
        assert res == sorted(res, reverse=True)


def test_guards():
    fb = filter_bank(3)
    with pytest.raises(ResourceLimit):
        cascade_scaling(fb, 25)
    with pytest.raises(ValueError):
        cascade_scaling(fb, 0)
    with pytest.raises(ValueError):
        cascade_wavelet(fb, cascade_wavelet(fb, cascade_scaling(fb, 3)))


def test_eigen_failure_on_defective_filter():
    fb = filter_bank(3)
    broken = type(fb)(order=fb.order, h=fb.h, g=fb.g, h_exact=tuple(q / 2 for q in fb.h_exact))
    with pytest.raises(EigenFailure):
        integer_values(broken)


def test_grid_function_shape_checked():
    with pytest.raises(ValueError):
        DyadicGridFunction(filter_bank(3).order, 2, np.zeros(5))
