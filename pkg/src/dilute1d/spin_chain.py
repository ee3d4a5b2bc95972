"""Ground-state energy per site of nearest-neighbour pair-coupling chains.

    h = (1/N) sum_i M^{i,i+1},   i+1 taken mod N for periodic chains,

with M the d^2 x d^2 pair matrix of a PairCoupling (P_S for Lai-Sutherland,
-(2/c')P_A - (2/c)P_S for LLH, or a scattering length matrix).  The
Hamiltonian is applied bond by bond on the d x d x ... x d state tensor and
is only materialized for the dense solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lanczos import LanczosConvergenceError, lanczos_ground  # noqa: F401  (re-exported)
from .special import digamma
from .spin_algebra import PairCoupling, build_coupling, build_pair_projectors, local_dim

DENSE_CAP = 4096
MEMORY_CAP = 3 ** 10  # largest Hilbert space accepted by default


@dataclass(frozen=True)
class SpinChainSpec:
    J: float
    N: int
    coupling: PairCoupling = field(repr=False)
    bc: str = "periodic"
    solver: str = "auto"  # auto | dense | lanczos
    max_iter: int = 500
    tol: float = 1e-10
    seed: int = 0
    memory_cap: int = MEMORY_CAP

    def __post_init__(self):
        d = local_dim(self.J)
        if self.N < 2:
            raise ValueError("chain needs N >= 2 sites")
        if self.bc not in ("periodic", "open"):
            raise ValueError(f"bc must be 'periodic' or 'open', got {self.bc!r}")
        if self.coupling.matrix.shape != (d * d, d * d):
            raise ValueError("coupling matrix does not match the local dimension")
        if self.solver not in ("auto", "dense", "lanczos"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.solver == "dense" and d ** self.N > DENSE_CAP:
            raise ValueError(f"dense solver limited to d^N <= {DENSE_CAP}, got {d ** self.N}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if d ** self.N > self.memory_cap:
            raise MemoryError(f"Hilbert space dimension {d ** self.N} exceeds the cap {self.memory_cap}")

    @property
    def d(self) -> int:
        return local_dim(self.J)

    @property
    def dim(self) -> int:
        return self.d ** self.N


@dataclass
class SpinChainResult:
    epsilon: float
    residual: float
    iterations: int
    solver: str
    ground_vector: np.ndarray | None = field(default=None, repr=False)


def bonds(N: int, bc: str):
    nb = N if bc == "periodic" else N - 1
    return [(i, (i + 1) % N) for i in range(nb)]


def chain_operator(M: np.ndarray, d: int, N: int, bc: str = "periodic"):
    """Return a function psi -> h psi with h = (1/N) sum over bonds of M."""
    M = np.asarray(M)
    dd = d * d
    blist = bonds(N, bc)

    def apply(psi):
        dtype = np.result_type(psi, M)
        t = psi.reshape((d,) * N)
        out = np.zeros((d,) * N, dtype=dtype)
        for i, j in blist:
            if j == i + 1:
                left, right = d ** i, d ** (N - i - 2)
                v = t.reshape(left, dd, right)
                out += np.einsum("pq,lqr->lpr", M, v).reshape(out.shape)
            else:
                # wrap-around bond (N-1, 0): rotate site 0 to the end
                r = np.moveaxis(t, 0, -1).reshape(d ** (N - 2), dd)
                w = (r @ M.T).reshape((d,) * N)
                out += np.moveaxis(w, -1, 0)
        return out.reshape(-1) / N

    return apply


def dense_chain_matrix(M, d, N, bc="periodic"):
    """Explicit (d^N x d^N) matrix of h, built from Kronecker products."""
    M = np.asarray(M)
    dim = d ** N
    H = np.zeros((dim, dim), dtype=np.result_type(M, float))
    for i, j in bonds(N, bc):
        if j == i + 1:
            H += np.kron(np.kron(np.eye(d ** i), M), np.eye(d ** (N - i - 2)))
        else:
            # wrap bond (N-1, 0) is adjacent in the cyclically shifted basis
            P = _cyclic_shift(d, N)
            Hb = np.kron(np.eye(d ** (N - 2)), M)  # acts on sites (N-2, N-1) of the shifted chain
            H += P.T @ Hb @ P
    return H / N


def _cyclic_shift(d, N):
    """Permutation matrix sending site k to site k-1 (mod N): |s0 s1 .. s_{N-1}> -> |s1 .. s_{N-1} s0>."""
    dim = d ** N
    idx = np.arange(dim).reshape((d,) * N)
    perm = np.moveaxis(idx, 0, -1).reshape(-1)
    P = np.zeros((dim, dim))
    P[np.arange(dim), perm] = 1.0
    return P


def ground_energy_per_site(spec: SpinChainSpec, keep_vector: bool = False) -> SpinChainResult:
    d, N = spec.d, spec.N
    M = spec.coupling.matrix
    solver = spec.solver
    if solver == "auto":
        solver = "dense" if spec.dim <= 256 else "lanczos"
    if solver == "dense":
        H = dense_chain_matrix(M, d, N, spec.bc)
        w, U = np.linalg.eigh(H)
        vec = U[:, 0]
        residual = float(np.linalg.norm(H @ vec - w[0] * vec))
        return SpinChainResult(float(w[0]), residual, 1, "dense", vec if keep_vector else None)
    apply = chain_operator(M, d, N, spec.bc)
    dtype = complex if np.iscomplexobj(M) else float
    res = lanczos_ground(apply, spec.dim, max_iter=spec.max_iter, tol=spec.tol, seed=spec.seed, dtype=dtype)
    return SpinChainResult(res.value, res.residual, res.iterations, "lanczos", res.vector if keep_vector else None)


def lai_sutherland_spec(J, N, bc="periodic", **kw) -> SpinChainSpec:
    proj = build_pair_projectors(J)
    return SpinChainSpec(J=J, N=N, coupling=build_coupling("ls", proj), bc=bc, **kw)


def thermodynamic_energy_per_site(J) -> float:
    """N -> infinity ground energy per site of the spin-J Lai-Sutherland chain,
    1 - [psi(1) - psi(1/(2J+1))] / (2J+1)."""
    n = local_dim(J)
    return 1.0 - (digamma(1.0) - digamma(1.0 / n)) / n


@dataclass
class SandwichRow:
    N: int
    epsilon: float
    lower: float
    upper: float
    passed: bool
    residual: float


def finite_size_sandwich(J, N_list, bc="periodic", **kw):
    """Check e_inf - 1/N <= eps(N) <= e_inf + 1/N for each N in N_list."""
    e_inf = thermodynamic_energy_per_site(J)
    rows = []
    for N in N_list:
        res = ground_energy_per_site(lai_sutherland_spec(J, N, bc, **kw))
        lo, hi = e_inf - 1.0 / N, e_inf + 1.0 / N
        rows.append(SandwichRow(N, res.epsilon, lo, hi, lo <= res.epsilon <= hi, res.residual))
    return rows


def llh_chain_energy(c, c_prime, N, bc="periodic", **kw) -> float:
    """Ground energy per site of -(1/N) sum (2/c' P_A + 2/c P_S) on a spin-1/2 ring."""
    proj = build_pair_projectors(0.5)
    coupling = build_coupling("llh", proj, c=c, c_prime=c_prime)
    return ground_energy_per_site(SpinChainSpec(J=0.5, N=N, coupling=coupling, bc=bc, **kw)).epsilon


def llh_thermodynamic(c, c_prime) -> float:
    """-2 (ln2/c' + (1 - ln2)/c), valid for c > c' > 0."""
    return -2.0 * (math.log(2) / c_prime + (1 - math.log(2)) / c)


def matrix_chain_energy(A, J, N, bc="periodic", **kw) -> float:
    """eps_J(A): ground energy per site of (1/N) sum A^{i,i+1}."""
    proj = build_pair_projectors(J)
    coupling = build_coupling("matrix", proj, M=A)
    return ground_energy_per_site(SpinChainSpec(J=J, N=N, coupling=coupling, bc=bc, **kw)).epsilon
