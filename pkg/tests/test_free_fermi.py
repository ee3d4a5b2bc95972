import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilute1d.free_fermi import (
    FreeFermiBox,
    check_density_bounds,
    coincident_coefficient,
    free_fermi_energy,
    midbox_coefficient,
    rdm,
    rho2_batch,
    rho2_over_gap2,
)


def test_energy_examples():
    assert free_fermi_energy(1, 1.0) == pytest.approx(math.pi ** 2)
    assert free_fermi_energy(2, 1.0) == pytest.approx(5 * math.pi ** 2)
    N, L = 100, 100.0
    ratio = free_fermi_energy(N, L) / (N * math.pi ** 2 / 3 * (N / L) ** 2)
    assert ratio == pytest.approx(1 + 3 / (2 * N) + 1 / (2 * N ** 2), rel=1e-13)
    assert ratio - 1 <= 0.016


def test_energy_is_sum_of_orbital_energies():
    N, L = 7, 3.0
    assert free_fermi_energy(N, L) == pytest.approx(sum((n * math.pi / L) ** 2 for n in range(1, N + 1)))


def test_orbitals():
    box = FreeFermiBox(9, 2.5)
    assert box.gram_residual() <= 1e-10
    assert np.allclose(box.orbitals([0.0, box.L]), 0, atol=1e-14)


def test_trace_normalization():
    box = FreeFermiBox(6, 4.0)
    t, w = np.polynomial.legendre.leggauss(80)
    x = 0.5 * box.L * (t + 1)
    total = np.sum(0.5 * box.L * w * np.diag(box.gamma1(x, x)))
    assert total == pytest.approx(box.N, rel=1e-8)


def test_coincident_points_vanish():
    box = FreeFermiBox(5, 5.0)
    for x in (0.3, 2.5, 4.9):
        assert abs(rdm(box, 2, [x, x])) <= 1e-12
        assert abs(rdm(box, 3, [x, x, 1.0])) <= 1e-12


def test_rejects_points_outside_and_bad_k():
    box = FreeFermiBox(3, 1.0)
    with pytest.raises(ValueError):
        rdm(box, 2, [0.5, 1.5])
    with pytest.raises(ValueError):
        rdm(box, 5, [0.1] * 5)
    with pytest.raises(ValueError):
        rdm(box, 2, [0.1, 0.2, 0.3])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=4, max_size=4))
def test_two_body_antisymmetry(u):
    box = FreeFermiBox(6, 3.0)
    x1, x2, y1, y2 = (box.L * v for v in u)
    a = rdm(box, 2, [x1, x2], [y1, y2])
    b = rdm(box, 2, [x2, x1], [y1, y2])
    assert abs(a + b) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.lists(st.floats(0, 1), min_size=4, max_size=4))
def test_positivity(k, u):
    box = FreeFermiBox(5, 5.0)
    assert rdm(box, k, [box.L * v for v in u[:k]]) >= -1e-12


def test_marginal_consistency():
    box = FreeFermiBox(6, 6.0)
    t, w = np.polynomial.legendre.leggauss(96)
    x2 = 0.5 * box.L * (t + 1)
    w2 = 0.5 * box.L * w
    for x1 in (0.7, 2.9, 5.1):
        integral = np.sum(w2 * rho2_batch(box, np.full_like(x2, x1), x2))
        rho1 = rdm(box, 1, [x1])
        assert integral == pytest.approx((box.N - 1) * rho1, rel=1e-6)


def test_midbox_small_gap_coefficient():
    rep = midbox_coefficient(FreeFermiBox(6, 6.0))
    assert rep.passed
    assert abs(rep.finite_difference - rep.limit) <= 0.1 * math.pi ** 2 / 3
    assert rep.bulk == pytest.approx(math.pi ** 2 / 3)


def test_coincident_limit_matches_small_gap():
    box = FreeFermiBox(8, 8.0)
    x = np.array([1.3, 4.0, 6.6])
    gap = 1e-4
    fd = rho2_batch(box, x + gap, x) / gap ** 2
    assert np.allclose(fd, coincident_coefficient(box, x), rtol=1e-3)
    # exactly coincident samples take the limit instead of 0/0
    assert np.allclose(rho2_over_gap2(box, x, x), coincident_coefficient(box, x))


@pytest.mark.parametrize("N", [4, 8])
def test_rho2_bound(N):
    rep = check_density_bounds(FreeFermiBox(N, float(N)), samples=10_000)
    assert rep.passed and rep.max_ratio2 <= 1
    assert rep.min_density >= -1e-12
    assert rep.fitted_c3 > 0 and rep.fitted_c4 > 0


def test_bound_ratio_stable_between_n4_and_n8():
    r4 = check_density_bounds(FreeFermiBox(4, 4.0), samples=10_000).max_ratio2
    r8 = check_density_bounds(FreeFermiBox(8, 8.0), samples=10_000).max_ratio2
    assert abs(r4 - r8) <= 0.2 * max(r4, r8)
