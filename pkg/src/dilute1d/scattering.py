"""Zero-energy scattering for scalar and matrix-valued measure potentials.

The scattering solution solves  -F'' + (1/2) V F = 0  on [-R, R] with
F(R) = I and F(-R) = B, where B is +1 / -1 (scalar even / odd) or one of
P_A - P_S (fermions), P_S - P_A (bosons), I (spatially symmetric, LLH).
Outside the support F is affine, F(x) = (R - A)^{-1} (x - A) for x >= R0,
which defines the scattering length (matrix) A.

Integration: the linear system (F, F') is propagated across each
smooth piece with classical RK4 step matrices (exact for the affine pieces,
where no steps are taken), and every Dirac atom w delta(x - x_k) is applied
as the jump F'(x_k+) = F'(x_k-) + (1/2) w F(x_k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .potentials import MatrixPotential, ScalarPotential
from .spin_algebra import projectors_for_dim

DEFAULT_RESOLUTION = 8192  # steps per length R on smooth pieces
DEGENERATE_SLOPE = 1e-10  # |slope| * R below this => infinite scattering length
_CHUNK = 512

BC_MODES = ("fermionic", "bosonic", "symmetric")


class Tabulation:
    """Piecewise data (x, F, F') on [-R, R], evaluated by cubic Hermite
    interpolation inside each smooth piece (exact on affine pieces)."""

    def __init__(self, segments):
        self.segments = segments
        x0, x1, F0, F1, d0, d1 = [], [], [], [], [], []
        for xs, F, dF in segments:
            x0.append(xs[:-1])
            x1.append(xs[1:])
            F0.append(F[:-1])
            F1.append(F[1:])
            d0.append(dF[:-1])
            d1.append(dF[1:])
        self._x0 = np.concatenate(x0)
        self._x1 = np.concatenate(x1)
        self._F0 = np.concatenate(F0)
        self._F1 = np.concatenate(F1)
        self._d0 = np.concatenate(d0)
        self._d1 = np.concatenate(d1)

    @property
    def xs(self):
        return np.concatenate([s[0] for s in self.segments])

    @property
    def values(self):
        return np.concatenate([s[1] for s in self.segments])

    @property
    def derivatives(self):
        return np.concatenate([s[2] for s in self.segments])

    def _locate(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self._x0[0], self._x1[-1]
        if np.any(x < lo - 1e-12) or np.any(x > hi + 1e-12):
            raise ValueError(f"evaluation point outside [{lo}, {hi}]")
        idx = np.clip(np.searchsorted(self._x0, x, side="right") - 1, 0, len(self._x0) - 1)
        h = self._x1[idx] - self._x0[idx]
        t = np.clip((x - self._x0[idx]) / h, 0.0, 1.0)
        return idx, h[:, None, None], t[:, None, None]

    def __call__(self, x):
        idx, h, t = self._locate(x)
        t2, t3 = t * t, t * t * t
        return ((2 * t3 - 3 * t2 + 1) * self._F0[idx] + (t3 - 2 * t2 + t) * h * self._d0[idx]
                + (-2 * t3 + 3 * t2) * self._F1[idx] + (t3 - t2) * h * self._d1[idx])

    def derivative(self, x):
        idx, h, t = self._locate(x)
        t2 = t * t
        return ((6 * t2 - 6 * t) / h * self._F0[idx] + (3 * t2 - 4 * t + 1) * self._d0[idx]
                + (-6 * t2 + 6 * t) / h * self._F1[idx] + (3 * t2 - 2 * t) * self._d1[idx])


def _step_matrices(V0, V1, x0, x1, xs, h, D):
    """RK4 one-step propagators for Y' = [[0, I], [V/2, 0]] Y on a piece where
    V is linear: V(x) = V0 + (x - x0)/(x1 - x0) (V1 - V0)."""
    slope = (V1 - V0) / (x1 - x0)
    eye = np.eye(2 * D)

    def gen(x):
        V = V0[None] + (x - x0)[:, None, None] * slope[None]
        G = np.zeros((len(x), 2 * D, 2 * D), dtype=V.dtype)
        G[:, :D, D:] = np.eye(D)
        G[:, D:, :D] = 0.5 * V
        return G

    A0, Ah, A1 = gen(xs), gen(xs + h / 2), gen(xs + h)
    K1 = A0
    K2 = Ah @ (eye + (h / 2) * K1)
    K3 = Ah @ (eye + (h / 2) * K2)
    K4 = A1 @ (eye + h * K3)
    return eye + (h / 6) * (K1 + 2 * K2 + 2 * K3 + K4)


class _Propagator:
    def __init__(self, pot: MatrixPotential, h_max: float, dtype):
        self.D = pot.dim
        self.atoms = {x: W for x, W in pot.merged_atoms()}
        self.pot = pot
        self.h_max = h_max
        self.dtype = dtype

    def _piece_density(self, a, b):
        """End values of the (linear) density on the open piece (a, b), or None if zero."""
        if not self.pot.has_density():
            return None
        xq = np.array([a + (b - a) / 3, a + 2 * (b - a) / 3])
        Vq = self.pot.density_at(xq)
        if not np.any(Vq):
            return None
        V0 = 2 * Vq[0] - Vq[1]
        V1 = 2 * Vq[1] - Vq[0]
        return V0.astype(self.dtype), V1.astype(self.dtype)

    def run(self, lo, hi, Y0, store):
        D = self.D
        pts = sorted({lo, hi} | {p for p in self.pot.breakpoints if lo < p < hi})
        Y = np.array(Y0, dtype=self.dtype)
        segments = []
        for a, b in zip(pts[:-1], pts[1:]):
            W = self.atoms.get(a)
            if W is not None:
                Y = Y.copy()
                Y[D:] = Y[D:] + 0.5 * W @ Y[:D]
            dens = self._piece_density(a, b)
            if dens is None:
                # free piece: exact affine transfer
                Yb = Y.copy()
                Yb[:D] = Y[:D] + (b - a) * Y[D:]
                if store:
                    segments.append((np.array([a, b]), np.stack([Y[:D], Yb[:D]]), np.stack([Y[D:], Yb[D:]])))
                Y = Yb
                continue
            n = max(4, math.ceil((b - a) / self.h_max))
            h = (b - a) / n
            grid = a + h * np.arange(n + 1)
            grid[-1] = b
            if store:
                Fs = np.empty((n + 1,) + Y[:D].shape, dtype=self.dtype)
                dFs = np.empty_like(Fs)
                Fs[0], dFs[0] = Y[:D], Y[D:]
            for start in range(0, n, _CHUNK):
                stop = min(n, start + _CHUNK)
                M = _step_matrices(dens[0], dens[1], a, b, grid[start:stop], h, D)
                for i in range(stop - start):
                    Y = M[i] @ Y
                    if store:
                        Fs[start + i + 1], dFs[start + i + 1] = Y[:D], Y[D:]
            if store:
                segments.append((grid, Fs, dFs))
        return Y, segments


def _resolve_bc(bc_mode, dim):
    if isinstance(bc_mode, str):
        mode = bc_mode.lower()
        if mode not in BC_MODES:
            raise ValueError(f"bc_mode must be one of {BC_MODES}, got {bc_mode!r}")
        if dim == 1:
            # scalar: fermionic/odd -> -1, bosonic/symmetric/even -> +1
            return mode, np.array([[-1.0 if mode == "fermionic" else 1.0]])
        proj = projectors_for_dim(dim)
        B = {"fermionic": proj.P_A - proj.P_S, "bosonic": proj.P_S - proj.P_A, "symmetric": np.eye(dim)}[mode]
        return mode, B
    raise TypeError("bc_mode must be a string")


def _solve_bvp(pot: MatrixPotential, R: float, B: np.ndarray, resolution: int):
    """Return (tabulation, F'(R)) of the scattering solution with F(R)=I, F(-R)=B."""
    D = pot.dim
    dtype = complex if pot.is_complex else float
    prop = _Propagator(pot, R / resolution, dtype)
    eye = np.eye(D)
    h = pot.hard_core
    if h > 0:
        # right half: F(h) = 0, F'(h) = C with F(R) = I; left half by F(x) = B F(-x)
        Y0 = np.vstack([np.zeros((D, D)), eye])
        T, _ = prop.run(h, R, Y0, store=False)
        C = np.linalg.solve(T[:D], eye)
        _, right = prop.run(h, R, Y0 @ C, store=True)
        left = [(-xs[::-1], np.einsum("ij,njk->nik", B, F[::-1]), -np.einsum("ij,njk->nik", B, dF[::-1]))
                for xs, F, dF in reversed(right)]
        zero = np.zeros((2, D, D), dtype=dtype)
        segs = left + [(np.array([-h, h]), zero, zero)] + right
        return Tabulation(segs), right[-1][2][-1]
    Y0 = np.vstack([np.hstack([eye, np.zeros((D, D))]), np.hstack([np.zeros((D, D)), eye])])
    T, _ = prop.run(-R, R, Y0, store=False)
    phi1, phi2 = T[:D, :D], T[:D, D:]
    C = np.linalg.solve(phi2, eye - phi1 @ B)
    Y, segs = prop.run(-R, R, np.vstack([B, C]), store=True)
    return Tabulation(segs), Y[D:]


@dataclass(frozen=True)
class ScatteringScalarResult:
    parity: str
    a: float
    R: float
    psi: Tabulation = field(repr=False)
    energy: float
    quadratic_energy: float

    @property
    def infinite(self) -> bool:
        return math.isinf(self.a)

    def __call__(self, x):
        return self.psi(x)[:, 0, 0]

    def derivative(self, x):
        return self.psi.derivative(x)[:, 0, 0]


def solve_scalar_scattering(v: ScalarPotential, R: float, parity: str = "even",
                            resolution: int = DEFAULT_RESOLUTION) -> ScatteringScalarResult:
    """Even/odd zero-energy scattering solution of -psi'' + v psi / 2 = 0.

    Boundary values psi(R) = 1, psi(-R) = +1 (even) or -1 (odd).  The
    scattering length is read off the affine tail, a = R - 1/psi'(R);
    a vanishing tail slope is reported as a = -inf.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not R > v.R0:
        raise ValueError(f"matching radius R={R} must exceed the support radius R0={v.R0}")
    pot = _ScalarAsMatrix(v)
    B = np.array([[1.0 if parity == "even" else -1.0]])
    tab, S = _solve_bvp(pot, R, B, resolution)
    s = float(np.real(S[0, 0]))
    if abs(s) * R < DEGENERATE_SLOPE:
        a = -math.inf
        energy = 0.0
    else:
        a = R - 1.0 / s
        energy = 4.0 / (R - a)
    quad = float(np.real(_quadratic_energy(tab, pot)[0, 0]))
    return ScatteringScalarResult(parity, a, float(R), tab, energy, quad)


class _ScalarAsMatrix:
    """Minimal 1x1 view of a scalar potential for the shared propagator."""

    dim = 1
    is_complex = False

    def __init__(self, v: ScalarPotential):
        self.scalar = v
        self.hard_core = v.hard_core
        self.R0 = v.R0
        self.breakpoints = v.breakpoints

    def merged_atoms(self):
        table = {}
        for x, w in self.scalar.atoms:
            table[x] = table.get(x, 0.0) + w
        return [(x, np.array([[w]])) for x, w in sorted(table.items())]

    def has_density(self):
        return self.scalar.density is not None

    def density_at(self, x):
        return self.scalar.density_at(np.atleast_1d(x))[:, None, None]


def _quadratic_energy(tab: Tabulation, pot) -> np.ndarray:
    """int 2 F'* F' + F* V F over [-R, R]; atoms summed exactly, Simpson per piece."""
    total = 0
    for xs, F, dF in tab.segments:
        FH = np.conj(np.swapaxes(F, 1, 2))
        integrand = 2 * np.conj(np.swapaxes(dF, 1, 2)) @ dF
        if pot.has_density() and len(xs) > 2:
            integrand = integrand + FH @ pot.density_at(xs) @ F
        elif pot.has_density():
            mid = 0.5 * (xs[0] + xs[1])
            if np.any(pot.density_at([mid])):
                raise RuntimeError("density on an untabulated piece")
        total = total + simpson(integrand, x=xs, axis=0)
    for x, W in pot.merged_atoms():
        if x < tab._x0[0] or x > tab._x1[-1]:
            continue
        Fx = tab(x)[0]
        total = total + np.conj(Fx.T) @ W @ Fx
    return total


@dataclass(frozen=True)
class ScatteringMatrixResult:
    A: np.ndarray = field(repr=False)  # finite part; zero on the infinite subspace
    R: float
    bc_mode: str
    F0: Tabulation = field(repr=False)
    slope: np.ndarray = field(repr=False)
    infinite_projector: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray
    diagnostics: dict

    @property
    def finite(self) -> bool:
        return not np.any(np.isinf(self.eigenvalues))

    @property
    def finite_projector(self) -> np.ndarray:
        return np.eye(self.A.shape[0]) - self.infinite_projector

    def inverse_gap(self) -> np.ndarray:
        """(R - A)^{-1}, which is zero on channels with A = -inf."""
        P = self.finite_projector
        return P @ np.linalg.pinv(self.R * P - P @ self.A @ P, hermitian=True) @ P

    def norm(self) -> float:
        return math.inf if not self.finite else float(np.max(np.abs(self.eigenvalues)))


def _extract(S, R):
    Sh = (S + S.conj().T) / 2
    s, U = np.linalg.eigh(Sh)
    inf_mask = np.abs(s) * R < DEGENERATE_SLOPE
    Uf, Ui = U[:, ~inf_mask], U[:, inf_mask]
    A = (Uf * (R - 1.0 / s[~inf_mask])) @ Uf.conj().T
    Pinf = Ui @ Ui.conj().T
    eig = np.where(inf_mask, -np.inf, R - 1.0 / np.where(inf_mask, 1.0, s))
    if np.isrealobj(S):
        A, Pinf = A.real, Pinf.real
    return A, Pinf, np.sort(eig), np.max(np.abs(S - S.conj().T))


def solve_matrix_scattering(V: MatrixPotential, R: float, bc_mode: str = "fermionic", *,
                            resolution: int = DEFAULT_RESOLUTION, check_radius: float | None = 2.0
                            ) -> ScatteringMatrixResult:
    """Matrix scattering solution and scattering length matrix A = R - F0'(R)^{-1}.

    Channels where F0'(R) vanishes (constant eigen-solutions) carry A = -inf;
    they are recorded in `infinite_projector` and excluded from `A`.
    With `check_radius`, A is recomputed at check_radius * R and the largest
    entrywise difference is stored as diagnostics['r_independence_residual'].
    """
    if not R > V.R0:
        raise ValueError(f"matching radius R={R} must exceed the support radius R0={V.R0}")
    mode, B = _resolve_bc(bc_mode, V.dim)
    tab, S = _solve_bvp(V, R, B, resolution)
    A, Pinf, eig, herm = _extract(S, R)
    proj = projectors_for_dim(V.dim)
    diag = {
        "hermiticity_residual": float(herm),
        "block_residual": float(np.max(np.abs(A @ proj.P_S - proj.P_S @ A))),
        "boundary_residual": float(max(np.max(np.abs(tab(R)[0] - np.eye(V.dim))), np.max(np.abs(tab(-R)[0] - B)))),
        "max_eigenvalue_minus_R0": float(np.max(eig) - V.R0),
    }
    diag["fit_disagreement"] = _affine_fit_disagreement(tab, A, Pinf, V.R0, R)
    result = ScatteringMatrixResult(A, float(R), mode, tab, S, Pinf, eig, diag)
    diag["energy_identity_residual"] = float(scattering_energy_identity(result, V))
    if check_radius:
        other = solve_matrix_scattering(V, check_radius * R, mode, resolution=resolution, check_radius=None)
        same_flags = np.max(np.abs(other.infinite_projector - Pinf)) < 1e-8
        diag["r_independence_residual"] = float(np.max(np.abs(other.A - A))) if same_flags else math.inf
    return result


def _affine_fit_disagreement(tab, A, Pinf, R0, R, n=16):
    """Least-squares affine fit of F on [R0 + eps, R], converted to a scattering
    matrix via the zero crossing of the fitted line, compared with A."""
    eps = 1e-3 * (R - R0)
    xs = np.linspace(R0 + eps, R, n)
    F = tab(xs).reshape(n, -1)
    X = np.vstack([xs, np.ones(n)]).T
    coef, *_ = np.linalg.lstsq(X, F, rcond=None)
    D = A.shape[0]
    slope, icpt = coef[0].reshape(D, D), coef[1].reshape(D, D)
    P = np.eye(D) - Pinf
    # F(x) = slope x + icpt = slope (x - A)  =>  A = -slope^+ icpt on finite channels
    A_fit = -P @ np.linalg.pinv(slope, rcond=1e-10) @ icpt @ P
    return float(np.max(np.abs(A_fit - A)))


def scattering_energy_identity(result: ScatteringMatrixResult, V: MatrixPotential, relative: bool = True) -> float:
    """|| int 2 F0'* F0' + F0* V F0  -  4 (R - A)^{-1} ||, restricted to finite channels.

    The integral is evaluated by quadrature on the tabulated solution,
    independently of the slope used to extract A.
    """
    E = _quadratic_energy(result.F0, V)
    P = result.finite_projector
    target = 4 * result.inverse_gap()
    resid = np.linalg.norm(P @ E @ P - target, 2)
    if relative:
        scale = np.linalg.norm(target, 2)
        return float(resid / scale) if scale > 0 else float(resid)
    return float(resid)


def dyson_gap(phi, dphi, v: ScalarPotential, R: float, channel: str, interval=None,
              a: float | None = None, n_gauss: int = 64) -> float:
    """Left minus right side of the channel-resolved Dyson inequality,

        int_I |phi'|^2 + v |phi|^2 / 2  -  (|phi(R)|^2 + |phi(-R)|^2) / (R - a),

    with a = a_e for the even channel (paired with P_A spin) and a = a_o for
    the odd channel (paired with P_S).  Nonnegative for every admissible phi.
    """
    if channel not in ("even", "odd"):
        raise ValueError("channel must be 'even' (P_A) or 'odd' (P_S)")
    if not R > v.R0:
        raise ValueError("R must exceed the range of v")
    lo, hi = (-R, R) if interval is None else (float(interval[0]), float(interval[1]))
    if lo > -R or hi < R:
        raise ValueError("interval must contain [-R, R]")
    probe = np.linspace(0, min(-lo, hi), 33)[1:]
    sign = 1.0 if channel == "even" else -1.0
    f_plus, f_minus = np.asarray(phi(probe)), np.asarray(phi(-probe))
    if np.max(np.abs(f_minus - sign * f_plus)) > 1e-9 * max(1.0, np.max(np.abs(f_plus))):
        raise ValueError(f"test function does not have {channel} parity")
    if a is None:
        a = solve_scalar_scattering(v, R, channel).a
    if math.isinf(a):
        coef = 0.0
    else:
        coef = 1.0 / (R - a)
    pts = sorted({lo, hi, 0.0, -R, R} | {p for p in v.breakpoints if lo < p < hi})
    gx, gw = np.polynomial.legendre.leggauss(n_gauss)
    kinetic = 0.0
    potential = 0.0
    for p, q in zip(pts[:-1], pts[1:]):
        x = 0.5 * (q - p) * gx + 0.5 * (q + p)
        w = 0.5 * (q - p) * gw
        kinetic += np.sum(w * np.abs(dphi(x)) ** 2)
        if v.density is not None:
            potential += 0.5 * np.sum(w * v.density_at(x) * np.abs(phi(x)) ** 2)
    for x0, wt in v.atoms:
        if lo <= x0 <= hi:
            potential += 0.5 * wt * abs(complex(np.asarray(phi(np.array([x0])))[0])) ** 2
    boundary = abs(complex(np.asarray(phi(np.array([R])))[0])) ** 2 + abs(complex(np.asarray(phi(np.array([-R])))[0])) ** 2
    return float(kinetic + potential - coef * boundary)


def hard_core_solution_norm2(x, R0, R):
    """|F_hc(x) xi|^2 / |xi|^2 for the hard core of radius R0 (any boundary mode)."""
    x = np.asarray(x, dtype=float)
    return (np.clip(np.abs(x) - R0, 0.0, None) / (R - R0)) ** 2


def hard_core_pointwise_check(V: MatrixPotential, R: float, samples: int = 1000, seed: int = 0,
                              bc_mode: str = "fermionic", result: ScatteringMatrixResult | None = None) -> float:
    """max over random x in [-R, R] and unit xi of |F_hc(x) xi|^2 - |F(x) xi|^2,
    with F_hc the hard-core solution of radius R0 = range(V).  Nonpositive
    up to round-off."""
    if result is None:
        result = solve_matrix_scattering(V, R, bc_mode, check_radius=None)
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-R, R, samples)
    xi = rng.normal(size=(samples, V.dim)) + 1j * rng.normal(size=(samples, V.dim))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    F = result.F0(xs)
    Fxi = np.einsum("nij,nj->ni", F, xi)
    ours = np.sum(np.abs(Fxi) ** 2, axis=1)
    hc = hard_core_solution_norm2(xs, V.R0, R)
    return float(np.max(hc - ours))
