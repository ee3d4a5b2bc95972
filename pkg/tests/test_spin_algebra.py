import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilute1d.spin_algebra import (
    build_coupling,
    build_pair_projectors,
    local_dim,
    spin_operators,
    swap_operator,
    total_spin_projectors,
)

SPINS = [0.5, 1.0, 1.5, 2.0, 2.5]


@pytest.mark.parametrize("J", SPINS)
def test_projector_algebra(J):
    p = build_pair_projectors(J)
    d = p.d
    eye = np.eye(d * d)
    assert np.allclose(p.P_S @ p.P_S, p.P_S, atol=1e-12)
    assert np.allclose(p.P_A @ p.P_A, p.P_A, atol=1e-12)
    assert np.allclose(p.P_S + p.P_A, eye, atol=1e-12)
    assert np.allclose(p.P_S @ p.P_A, 0, atol=1e-12)
    assert np.allclose(p.SWAP @ p.SWAP, eye, atol=1e-12)
    assert np.allclose(p.SWAP @ p.P_S, p.P_S @ p.SWAP, atol=1e-12)
    assert np.linalg.matrix_rank(p.P_S) == d * (d + 1) // 2
    assert np.linalg.matrix_rank(p.P_A) == d * (d - 1) // 2


def test_ranks_small():
    p = build_pair_projectors(0.5)
    assert np.linalg.matrix_rank(p.P_A) == 1
    assert np.linalg.matrix_rank(p.P_S) == 3
    p = build_pair_projectors(1)
    assert np.linalg.matrix_rank(p.P_S) == 6
    assert np.linalg.matrix_rank(p.P_A) == 3


def test_swap_acts_on_product_basis():
    d = 3
    S = swap_operator(d)
    e = np.eye(d)
    for a in range(d):
        for b in range(d):
            assert np.array_equal(S @ np.kron(e[a], e[b]), np.kron(e[b], e[a]))


def test_spin_half_heisenberg_identity():
    # 2 P_S = 3/2 + 2 S1.S2
    p = build_pair_projectors(0.5)
    ops = spin_operators(0.5)
    dot = sum(np.kron(s, s) for s in ops)
    assert np.allclose(2 * p.P_S, 1.5 * np.eye(4) + 2 * dot, atol=1e-12)


@pytest.mark.parametrize("J", SPINS)
def test_spin_operator_commutators(J):
    sx, sy, sz = spin_operators(J)
    assert np.allclose(sx @ sy - sy @ sx, 1j * sz, atol=1e-12)
    d = local_dim(J)
    casimir = sx @ sx + sy @ sy + sz @ sz
    Jv = (d - 1) / 2
    assert np.allclose(casimir, Jv * (Jv + 1) * np.eye(d), atol=1e-12)


@pytest.mark.parametrize("J", SPINS)
def test_total_spin_symmetry_classes(J):
    # P_S is the identity on the total-spin-S sector iff 2J - S is even
    p = build_pair_projectors(J)
    blocks = total_spin_projectors(J)
    assert np.allclose(sum(blocks.values()), np.eye(p.dim), atol=1e-10)
    for S, P in blocks.items():
        if round(2 * J - S) % 2 == 0:
            assert np.allclose(p.P_S @ P, P, atol=1e-10)
        else:
            assert np.allclose(p.P_S @ P, 0, atol=1e-10)


@pytest.mark.parametrize("bad", [0, -0.5, 0.3, 1.25])
def test_rejects_bad_spin(bad):
    with pytest.raises(ValueError):
        build_pair_projectors(bad)


def test_coupling_examples():
    p = build_pair_projectors(0.5)
    ls = build_coupling("ls", p)
    assert np.allclose(np.sort(np.linalg.eigvalsh(ls.matrix)), [0, 1, 1, 1])
    llh = build_coupling("llh", p, c=2, c_prime=1)
    assert np.allclose(np.sort(np.linalg.eigvalsh(llh.matrix)), [-2, -1, -1, -1])
    A = -0.5 * p.P_A + 0.2 * p.P_S
    m = build_coupling("matrix", p, M=A)
    assert np.allclose(np.sort(np.linalg.eigvalsh(m.matrix)), [-0.5, 0.2, 0.2, 0.2])
    same = build_coupling("matrix", p, M=0.3 * p.P_A + 0.3 * p.P_S)
    assert np.allclose(same.matrix, 0.3 * np.eye(4))


def test_coupling_errors():
    p = build_pair_projectors(0.5)
    with pytest.raises(ValueError):
        build_coupling("llh", p, c=-1, c_prime=1)
    with pytest.raises(ValueError):
        build_coupling("llh", p, c=1, c_prime=0)
    M = np.zeros((4, 4))
    M[0, 1] = 1.0
    with pytest.raises(ValueError):
        build_coupling("matrix", p, M=M)
    with pytest.raises(ValueError):
        build_coupling("matrix", p, M=np.eye(9))
    with pytest.raises(ValueError):
        build_coupling("bogus", p)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2**31 - 1))
def test_matrix_coupling_is_linear(alpha, beta, seed):
    p = build_pair_projectors(1.0)
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(9, 9))
    Y = rng.normal(size=(9, 9))
    M1, M2 = X + X.T, Y + Y.T
    lhs = build_coupling("matrix", p, M=alpha * M1 + beta * M2).matrix
    rhs = alpha * build_coupling("matrix", p, M=M1).matrix + beta * build_coupling("matrix", p, M=M2).matrix
    assert np.allclose(lhs, rhs, atol=1e-12)
