"""Pair-spin algebra for two spin-J particles.

All pair matrices live on C^d (x) C^d with d = 2J+1, in the lexicographic
product basis |a>|b> -> index a*d + b, where a, b = 0..d-1 label
m = J, J-1, ..., -J.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

HERMITIAN_TOL = 1e-12


def local_dim(J) -> int:
    """Return d = 2J+1, rejecting anything that is not a positive half-integer."""
    twoJ = Fraction(J).limit_denominator(1000) * 2
    if twoJ.denominator != 1 or abs(float(twoJ) - 2 * float(J)) > 1e-12:
        raise ValueError(f"J must be a half-integer, got {J!r}")
    if twoJ < 1:
        raise ValueError(f"J must be positive, got {J!r}")
    return int(twoJ) + 1


@dataclass(frozen=True)
class SpinLocalDim:
    J: float
    d: int

    @classmethod
    def from_spin(cls, J) -> "SpinLocalDim":
        return cls(float(J), local_dim(J))


def spin_operators(J):
    """Spin matrices (Sx, Sy, Sz) for spin J in the basis m = J, ..., -J."""
    d = local_dim(J)
    J = (d - 1) / 2
    m = J - np.arange(d)
    # <m+1|S+|m> = sqrt(J(J+1) - m(m+1))
    sp = np.zeros((d, d))
    for k in range(1, d):
        sp[k - 1, k] = np.sqrt(J * (J + 1) - m[k] * (m[k] + 1))
    sm = sp.T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    sz = np.diag(m)
    return sx, sy, sz


def swap_operator(d: int) -> np.ndarray:
    swap = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            swap[b * d + a, a * d + b] = 1.0
    return swap


@dataclass(frozen=True)
class PairProjectors:
    d: int
    P_S: np.ndarray = field(repr=False)
    P_A: np.ndarray = field(repr=False)
    SWAP: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.d * self.d

    @property
    def fermionic_bc(self) -> np.ndarray:
        """F(-R) for spin-J fermions: P_A - P_S."""
        return self.P_A - self.P_S

    @property
    def bosonic_bc(self) -> np.ndarray:
        return self.P_S - self.P_A


def build_pair_projectors(J) -> PairProjectors:
    d = local_dim(J)
    swap = swap_operator(d)
    eye = np.eye(d * d)
    P_S = (eye + swap) / 2
    P_A = (eye - swap) / 2
    for arr in (swap, P_S, P_A):
        arr.setflags(write=False)
    return PairProjectors(d, P_S, P_A, swap)


def projectors_for_dim(dim: int) -> PairProjectors:
    """Projectors for a pair space of dimension dim = d^2."""
    d = int(round(np.sqrt(dim)))
    if d * d != dim or d < 2:
        raise ValueError(f"pair dimension must be a square d^2 with d >= 2, got {dim}")
    return build_pair_projectors((d - 1) / 2)


@dataclass(frozen=True)
class PairCoupling:
    kind: str
    params: dict
    matrix: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))


def is_hermitian(M, tol=HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.max(np.abs(M - M.conj().T), initial=0.0) <= tol


def build_coupling(kind: str, projectors: PairProjectors, *, c=None, c_prime=None, M=None) -> PairCoupling:
    """Realize a nearest-neighbour pair coupling.

    kind is one of "ls" (Lai-Sutherland, matrix P_S), "llh" (matrix
    -(2/c') P_A - (2/c) P_S) or "matrix" (an explicit Hermitian d^2 x d^2 M,
    e.g. a scattering length matrix).
    """
    kind = kind.lower().replace("-", "_")
    if kind in ("ls", "lai_sutherland", "laisutherland"):
        mat = projectors.P_S.copy()
        return PairCoupling("LaiSutherland", {}, mat)
    if kind == "llh":
        if c is None or c_prime is None or not (c > 0 and c_prime > 0):
            raise ValueError("LLH coupling needs c > 0 and c_prime > 0")
        mat = -(2 / c_prime) * projectors.P_A - (2 / c) * projectors.P_S
        return PairCoupling("LLH", {"c": float(c), "c_prime": float(c_prime)}, mat)
    if kind == "matrix":
        M = np.array(M)
        if M.shape != (projectors.dim, projectors.dim):
            raise ValueError(f"coupling matrix must be {projectors.dim}x{projectors.dim}, got {M.shape}")
        if not is_hermitian(M):
            raise ValueError("coupling matrix is not Hermitian")
        if np.isrealobj(M) or np.max(np.abs(M.imag)) == 0:
            M = M.real.astype(float)
        return PairCoupling("Matrix", {}, M)
    raise ValueError(f"unknown coupling kind {kind!r}")


def total_spin_projectors(J):
    """Projectors onto total-spin-S sectors of two spin-J particles, keyed by S."""
    sx, sy, sz = spin_operators(J)
    d = sx.shape[0]
    eye = np.eye(d)
    S2 = sum(np.linalg.matrix_power(np.kron(s, eye) + np.kron(eye, s), 2) for s in (sx, sy, sz))
    w, U = np.linalg.eigh(S2)
    Jf = (d - 1) / 2
    out = {}
    for twoS in range(0, 2 * int(round(2 * Jf)) + 1, 2):
        S = twoS / 2
        sel = np.abs(w - S * (S + 1)) < 1e-8
        if sel.any():
            V = U[:, sel]
            out[S] = V @ V.conj().T
    return out
