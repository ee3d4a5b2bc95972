import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from dilute1d.lanczos import LanczosConvergenceError, lanczos_ground
from dilute1d.spin_algebra import build_coupling, build_pair_projectors
from dilute1d.spin_chain import (
    SpinChainSpec,
    chain_operator,
    dense_chain_matrix,
    finite_size_sandwich,
    ground_energy_per_site,
    lai_sutherland_spec,
    llh_chain_energy,
    llh_thermodynamic,
    matrix_chain_energy,
    thermodynamic_energy_per_site,
)


def eps(J, N, **kw):
    return ground_energy_per_site(lai_sutherland_spec(J, N, **kw)).epsilon


def test_lanczos_random_matrix():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(300, 300))
    H = X + X.T
    res = lanczos_ground(lambda v: H @ v, 300, tol=1e-10)
    assert res.value == pytest.approx(np.linalg.eigvalsh(H)[0], abs=1e-9)
    assert res.residual <= 1e-10 * max(1, abs(res.value))


def test_lanczos_reports_non_convergence():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(200, 200))
    H = X + X.T
    with pytest.raises(LanczosConvergenceError) as info:
        lanczos_ground(lambda v: H @ v, 200, max_iter=4)
    assert len(info.value.history) == 4


def test_small_chain_oracles():
    assert eps(0.5, 2, solver="dense") == pytest.approx(0.0, abs=1e-12)
    assert eps(0.5, 3, solver="dense") == pytest.approx(0.5, abs=1e-12)
    assert eps(0.5, 4, solver="dense") == pytest.approx(0.25, abs=1e-12)


def test_heisenberg_ring_identity():
    # 4-site ring: sum S.S has ground value -2, P_S = 3/4 + S.S
    assert eps(0.5, 4, solver="lanczos") == pytest.approx((4 * 0.75 - 2) / 4, abs=1e-10)


def test_thermodynamic_values():
    assert thermodynamic_energy_per_site(0.5) == pytest.approx(1 - math.log(2), abs=1e-13)
    ref = 1 - (1.5 * math.log(3) + math.pi / (2 * math.sqrt(3))) / 3
    assert thermodynamic_energy_per_site(1) == pytest.approx(ref, abs=1e-13)
    assert ref == pytest.approx(0.148394, abs=5e-7)
    seq = [thermodynamic_energy_per_site(J) for J in (2.5, 3.5, 4.5)]
    assert seq[0] > seq[1] > seq[2] > 0


@pytest.mark.parametrize("J,Ns", [(0.5, (2, 4, 6, 8, 10, 12)), (1.0, (4, 6, 8))])
def test_sandwich(J, Ns):
    for row in finite_size_sandwich(J, Ns):
        assert row.passed, row


@pytest.mark.parametrize("J,N", [(0.5, 6), (0.5, 8), (0.5, 10), (1.0, 4), (1.0, 6), (1.5, 4)])
def test_lanczos_matches_dense(J, N):
    assert abs(eps(J, N, solver="dense") - eps(J, N, solver="lanczos")) <= 1e-9


@pytest.mark.slow
def test_lanczos_matches_dense_at_dense_cap():
    assert abs(eps(0.5, 12, solver="dense") - eps(0.5, 12, solver="lanczos")) <= 1e-9


def test_matrix_free_operator_equals_dense():
    p = build_pair_projectors(1.0)
    rng = np.random.default_rng(0)
    X = rng.normal(size=(9, 9))
    M = X + X.T
    for bc in ("periodic", "open"):
        H = dense_chain_matrix(M, 3, 5, bc)
        apply = chain_operator(M, 3, 5, bc)
        v = rng.normal(size=3 ** 5)
        assert np.allclose(apply(v), H @ v, atol=1e-12)
    assert p.dim == 9


def test_translation_invariance():
    N, d = 8, 2
    spec = lai_sutherland_spec(0.5, N, solver="lanczos")
    res = ground_energy_per_site(spec, keep_vector=True)
    shifted = np.moveaxis(res.ground_vector.reshape((d,) * N), 0, -1).reshape(-1)
    H = chain_operator(spec.coupling.matrix, d, N)
    assert np.vdot(shifted, H(shifted)).real == pytest.approx(res.epsilon, abs=1e-10)


@pytest.mark.parametrize("J", [0.5, 1.0])
def test_global_unitary_invariance(J):
    p = build_pair_projectors(J)
    u = unitary_group.rvs(p.d, random_state=7)
    U = np.kron(u, u)
    M = U @ p.P_S @ U.conj().T
    base = eps(J, 6 if J == 0.5 else 4)
    assert matrix_chain_energy(M, J, 6 if J == 0.5 else 4) == pytest.approx(base, abs=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 5), st.floats(-3, 3))
def test_affine_coupling_law(alpha, beta):
    p = build_pair_projectors(0.5)
    M = -0.7 * p.P_A + 0.4 * p.P_S
    e0 = matrix_chain_energy(M, 0.5, 6)
    e1 = matrix_chain_energy(alpha * M + beta * np.eye(4), 0.5, 6)
    assert e1 == pytest.approx(alpha * e0 + beta, abs=1e-10)


@pytest.mark.parametrize("N", [4, 6, 8, 10])
def test_open_vs_periodic(N):
    assert abs(eps(0.5, N, bc="open") - eps(0.5, N)) <= 2 / N


def test_llh():
    for N in (4, 6):
        assert llh_chain_energy(1.0, 1.0, N) == pytest.approx(-2.0, abs=1e-12)
    e = llh_chain_energy(4.0, 1.0, 12)
    assert abs(e - llh_thermodynamic(4.0, 1.0)) <= 2 / 12
    assert llh_thermodynamic(4.0, 1.0) == pytest.approx(-2 * (math.log(2) + (1 - math.log(2)) / 4), abs=1e-14)


def test_llh_affine_in_heisenberg():
    # -(2/c')P_A - (2/c)P_S = -2/c' + (2/c' - 2/c) P_S; for c' > c the slope is
    # negative and the minimum sits at the top of the P_S chain spectrum, which is 1
    c, N = 3.0, 8
    h = eps(0.5, N)
    for cp in (0.5, 1.0, 2.0):
        assert llh_chain_energy(c, cp, N) == pytest.approx(-2 / cp + (2 / cp - 2 / c) * h, abs=1e-10)
    for cp in (10.0, 1e6, 1e9):
        assert llh_chain_energy(c, cp, N) == pytest.approx(-2 / c, abs=1e-10)


def test_spec_validation():
    p = build_pair_projectors(0.5)
    ls = build_coupling("ls", p)
    with pytest.raises(ValueError):
        SpinChainSpec(J=0.5, N=1, coupling=ls)
    with pytest.raises(ValueError):
        SpinChainSpec(J=0.5, N=4, coupling=ls, bc="twisted")
    with pytest.raises(ValueError):
        SpinChainSpec(J=1.0, N=4, coupling=ls)
    with pytest.raises(ValueError):
        SpinChainSpec(J=0.5, N=13, coupling=ls, solver="dense")
    with pytest.raises(MemoryError):
        SpinChainSpec(J=0.5, N=30, coupling=ls)


def test_ls_spectrum_range():
    for N in (3, 5, 7):
        e = eps(0.5, N)
        assert 0 <= e <= 1


def test_seed_determinism():
    a = ground_energy_per_site(lai_sutherland_spec(0.5, 10, solver="lanczos", seed=3))
    b = ground_energy_per_site(lai_sutherland_spec(0.5, 10, solver="lanczos", seed=3))
    assert a.epsilon == b.epsilon and a.iterations == b.iterations
