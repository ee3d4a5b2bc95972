import math
import warnings

import numpy as np
import pytest

from dilute1d.bethe import (
    BetheConvergenceError,
    BetheGrids,
    TruncationWarning,
    gauss_legendre,
    ll_neumann_lower_bound,
    solve_lieb_liniger,
    solve_yang_gaudin,
)

PI2_3 = math.pi ** 2 / 3


def test_gauss_legendre_panels_integrate_polynomials():
    x, w = gauss_legendre(-2.0, 3.0, 64, panels=8)
    assert np.sum(w * x ** 5) == pytest.approx((3 ** 6 - 2 ** 6) / 6, rel=1e-13)


def test_tonks_limit():
    s = solve_lieb_liniger(1.0, 1e6)
    assert abs(s.e_per_rho3 / PI2_3 - 1) <= 1e-4
    assert np.allclose(s.f, 1 / (2 * np.pi), rtol=1e-5)


@pytest.mark.parametrize("g", [0.005, 0.01, 0.02])
def test_ll_dilute_band(g):
    s = solve_lieb_liniger(1.0, 1 / g)
    assert abs(s.e_per_rho3 - PI2_3 * (1 - 4 * g)) <= 20 * g ** 2 * PI2_3
    assert abs(s.density - 1.0) <= 1e-8
    assert s.residual <= 1e-10
    assert np.all(s.f > 0)


def test_ll_monotone_in_coupling():
    e = [solve_lieb_liniger(1.0, c).e_density for c in (50.0, 100.0, 1e6)]
    assert e[0] < e[1] < e[2]


def test_ll_quadrature_convergence():
    a = solve_lieb_liniger(1.0, 100.0)
    b = solve_lieb_liniger(1.0, 100.0, BetheGrids(n_k=128))
    assert abs(a.e_density - b.e_density) / b.e_density <= 1e-9


@pytest.mark.parametrize("gamma", [0.1, 0.02])
def test_ll_weak_coupling_series(gamma):
    # e / rho^3 = gamma - 4 gamma^{3/2} / (3 pi) + (1/6 - 1/pi^2) gamma^2 + O(gamma^{5/2})
    s = solve_lieb_liniger(1.0, gamma, BetheGrids(n_k=1024))
    series = gamma - 4 * gamma ** 1.5 / (3 * math.pi) + (1 / 6 - 1 / math.pi ** 2) * gamma ** 2
    assert abs(s.e_per_rho3 - series) <= 5e-3 * gamma ** 2.5


def test_unresolved_kernel_is_reported():
    with pytest.raises(BetheConvergenceError):
        solve_lieb_liniger(1.0, 0.005, BetheGrids(n_k=64))


@pytest.mark.parametrize("g", [0.005, 0.01])
def test_yg_band_and_magnetization(g):
    s = solve_yang_gaudin(1.0, 1 / g)
    assert abs(s.m_density - 0.5) <= 1e-4
    assert abs(s.e_per_rho3 - PI2_3 * (1 - 4 * math.log(2) * g)) <= 20 * g ** 2 * PI2_3
    assert s.residual <= 1e-10
    assert np.all(s.f > 0) and np.all(s.sigma >= -1e-15 * np.max(s.sigma))


def test_yg_magnetization_at_c50():
    assert abs(solve_yang_gaudin(1.0, 50.0).m_density - 0.5) <= 1e-4


def test_yg_symmetry():
    s = solve_yang_gaudin(1.0, 100.0)
    assert np.max(np.abs(s.f - s.f[::-1])) <= 1e-12
    assert np.max(np.abs(s.sigma - s.sigma[::-1])) <= 1e-12 * np.max(s.sigma)


def test_yg_truncation_and_quadrature_robustness():
    base = solve_yang_gaudin(1.0, 100.0)
    wide = solve_yang_gaudin(1.0, 100.0, BetheGrids(B_cut_over_c=40.0, n_lambda=2048, panels=128))
    fine = solve_yang_gaudin(1.0, 100.0, BetheGrids(n_k=128))
    assert abs(base.e_density - wide.e_density) / base.e_density <= 1e-8
    assert abs(base.e_density - fine.e_density) / base.e_density <= 1e-9


def test_yg_fixed_point_agrees_with_direct():
    direct = solve_yang_gaudin(1.0, 100.0)
    fp = solve_yang_gaudin(1.0, 100.0, BetheGrids(method="fixed_point"))
    assert fp.iterations > 1
    assert abs(fp.e_density - direct.e_density) <= 1e-8
    ll = solve_lieb_liniger(1.0, 100.0, BetheGrids(method="fixed_point"))
    assert ll.e_density == pytest.approx(solve_lieb_liniger(1.0, 100.0).e_density, rel=1e-9)


def test_yg_free_limit():
    # sigma decouples as c grows: f -> 1/(2 pi)
    s = solve_yang_gaudin(1.0, 1e5)
    assert np.allclose(s.f, 1 / (2 * np.pi), rtol=1e-4)
    assert s.e_per_rho3 == pytest.approx(PI2_3, rel=1e-4)


def test_yg_no_truncation_warning_at_defaults():
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        solve_yang_gaudin(1.0, 100.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        BetheGrids(n_k=32)
    with pytest.raises(ValueError):
        BetheGrids(B_cut_over_c=10)
    with pytest.raises(ValueError):
        BetheGrids(method="newton")
    with pytest.raises(ValueError):
        solve_lieb_liniger(-1.0, 1.0)


def test_neumann_bound():
    b = ll_neumann_lower_bound(100, 100.0, math.inf)
    assert b.value == pytest.approx(PI2_3 * 100 * (1 - 100 ** (-2 / 3)), rel=1e-14)
    assert b.in_validity
    # kappa = 0 floor sits below the thermodynamic energy at rho/c = 0.01
    floor = ll_neumann_lower_bound(1000, 1000.0, 100.0, kappa=0.0).value / 1000.0
    assert solve_lieb_liniger(1.0, 100.0).e_density >= floor
    assert not ll_neumann_lower_bound(10, 1.0, 1e-3).in_validity
    assert ll_neumann_lower_bound(10, 1.0, 1e-3).value < ll_neumann_lower_bound(10, 1.0, 1e-2).value
