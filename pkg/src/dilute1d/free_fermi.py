"""Spinless Dirichlet free Fermi ground state on [0, L] and its reduced densities.

Orbitals phi_n(x) = sqrt(2/L) sin(n pi x / L), n = 1..N.  The k-particle
reduced density matrix (normalized to N!/(N-k)!) is the Wick determinant

    gamma^(k)(x_1..x_k; y_1..y_k) = det[gamma^(1)(x_i, y_j)],

and rho^(k)(x) = gamma^(k)(x; x) is its diagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class FreeFermiBox:
    N: int
    L: float

    def __post_init__(self):
        if self.N < 1 or not self.L > 0:
            raise ValueError("need N >= 1 and L > 0")

    @property
    def rho(self) -> float:
        return self.N / self.L

    def orbitals(self, x):
        """Matrix phi[i, n-1] = phi_n(x_i)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = np.arange(1, self.N + 1)
        return math.sqrt(2 / self.L) * np.sin(np.outer(x, n) * (np.pi / self.L))

    def d_orbitals(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = np.arange(1, self.N + 1)
        return math.sqrt(2 / self.L) * (n * np.pi / self.L) * np.cos(np.outer(x, n) * (np.pi / self.L))

    def gamma1(self, x, y):
        """One-body kernel sum_n phi_n(x) phi_n(y) as a len(x) x len(y) matrix."""
        return self.orbitals(x) @ self.orbitals(y).T

    def gram_residual(self, n_quad=None) -> float:
        n_quad = n_quad or 4 * self.N + 16
        t, w = np.polynomial.legendre.leggauss(n_quad)
        x = 0.5 * self.L * (t + 1)
        phi = self.orbitals(x)
        G = phi.T @ (phi * (0.5 * self.L * w)[:, None])
        return float(np.max(np.abs(G - np.eye(self.N))))


def free_fermi_energy(N: int, L: float) -> float:
    """sum_{n<=N} (n pi / L)^2."""
    if N < 1 or not L > 0:
        raise ValueError("need N >= 1 and L > 0")
    return (math.pi / L) ** 2 * N * (N + 1) * (2 * N + 1) / 6


def _check_points(box, pts):
    pts = np.asarray(pts, dtype=float)
    if np.any(pts < 0) or np.any(pts > box.L):
        raise ValueError(f"points must lie in [0, {box.L}]")
    return pts


def rdm(box: FreeFermiBox, k: int, xs, ys=None) -> float:
    """gamma^(k)(xs; ys); ys defaults to xs, giving the density rho^(k)(xs)."""
    if k not in (1, 2, 3, 4):
        raise ValueError("k must be 1, 2, 3 or 4")
    xs = _check_points(box, np.atleast_1d(xs))
    ys = xs if ys is None else _check_points(box, np.atleast_1d(ys))
    if len(xs) != k or len(ys) != k:
        raise ValueError(f"need {k} x-points and {k} y-points")
    # singular kernels (points on a wall) are exact zeros, not errors
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.linalg.det(box.gamma1(xs, ys)))


def rho2_batch(box: FreeFermiBox, x1, x2):
    """rho^(2)(x1, x2) for arrays of pairs."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    p1, p2 = box.orbitals(x1), box.orbitals(x2)
    g11 = np.einsum("in,in->i", p1, p1)
    g22 = np.einsum("in,in->i", p2, p2)
    g12 = np.einsum("in,in->i", p1, p2)
    return g11 * g22 - g12 ** 2


def rho2_over_gap2(box: FreeFermiBox, x1, x2, coincide=1e-9):
    """rho^(2)(x1, x2) / (x1 - x2)^2, replaced by its Delta -> 0 limit
    |Phi|^2 |Phi'|^2 - (Phi . Phi')^2 where the points (nearly) coincide."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    gap = x1 - x2
    out = np.empty(np.broadcast(x1, x2).shape)
    near = np.abs(gap) <= coincide * box.L
    far = ~near
    if np.any(far):
        out[far] = rho2_batch(box, x1[far], x2[far]) / gap[far] ** 2
    if np.any(near):
        out[near] = coincident_coefficient(box, 0.5 * (x1[near] + x2[near]))
    return out


def coincident_coefficient(box: FreeFermiBox, x):
    """lim_{Delta -> 0} rho^(2)(x + Delta, x) / Delta^2 (Gram determinant of Phi, Phi')."""
    p, dp = box.orbitals(x), box.d_orbitals(x)
    a = np.einsum("in,in->i", p, p)
    b = np.einsum("in,in->i", dp, dp)
    ab = np.einsum("in,in->i", p, dp)
    return a * b - ab ** 2


@dataclass
class MidBoxCoefficient:
    finite_difference: float
    limit: float
    bulk: float  # pi^2 rho^4 / 3
    f: float  # limit - bulk
    passed: bool


def midbox_coefficient(box: FreeFermiBox, gap=1e-3, rel=0.1) -> MidBoxCoefficient:
    """Compare rho^(2)(x2 + gap, x2)/gap^2 at x2 = L/2 with the exact small-gap
    coefficient pi^2 rho^4/3 + f(x2); tolerance rel * pi^2 rho^4 / 3."""
    x2 = box.L / 2
    fd = float(rho2_batch(box, np.array([x2 + gap]), np.array([x2]))[0]) / gap ** 2
    limit = float(coincident_coefficient(box, np.array([x2]))[0])
    bulk = math.pi ** 2 * box.rho ** 4 / 3
    return MidBoxCoefficient(fd, limit, bulk, limit - bulk, abs(fd - limit) <= rel * bulk)


@dataclass
class DensityBoundReport:
    N: int
    L: float
    samples: int
    max_ratio2: float  # max rho2 / (8 pi^2 rho^4 Delta^2); must be <= 1
    fitted_c3: float  # max rho3 / (rho^7 D12^2 D23^2), reported only
    fitted_c4: float  # max rho4 / (rho^8 D12^2 D34^2), reported only
    min_density: float
    passed: bool
    note: str = field(default="c3 and c4 are fitted, not asserted")


def check_density_bounds(box: FreeFermiBox, samples: int = 10_000, seed: int = 0,
                         higher_samples: int | None = None) -> DensityBoundReport:
    """Sample the box uniformly and test rho^(2) <= 8 pi^2 rho^4 (x1 - x2)^2."""
    rng = np.random.default_rng(seed)
    rho = box.rho
    x = rng.uniform(0, box.L, size=(samples, 2))
    ratio2 = rho2_over_gap2(box, x[:, 0], x[:, 1]) / (8 * math.pi ** 2 * rho ** 4)
    r2 = rho2_batch(box, x[:, 0], x[:, 1])

    m = higher_samples if higher_samples is not None else min(samples, 2000)
    y = rng.uniform(0, box.L, size=(m, 4))
    phi = box.orbitals(y.reshape(-1)).reshape(m, 4, box.N)
    G = np.einsum("sin,sjn->sij", phi, phi)
    r3 = np.linalg.det(G[:, :3, :3])
    r4 = np.linalg.det(G)
    shape3 = rho ** 7 * (y[:, 0] - y[:, 1]) ** 2 * (y[:, 1] - y[:, 2]) ** 2
    shape4 = rho ** 8 * (y[:, 0] - y[:, 1]) ** 2 * (y[:, 2] - y[:, 3]) ** 2
    c3 = float(np.max(r3 / shape3))
    c4 = float(np.max(r4 / shape4))
    min_density = float(min(r2.min(), r3.min(), r4.min()))
    max2 = float(np.max(ratio2))
    return DensityBoundReport(box.N, box.L, samples, max2, c3, c4, min_density, max2 <= 1.0)


def density_table(box: FreeFermiBox, n_points: int = 101):
    """Rows (x, rho1(x), rho2(x, L/2)) on a uniform grid, for CSV export."""
    x = np.linspace(0.0, box.L, n_points)
    rho1 = np.einsum("in,in->i", box.orbitals(x), box.orbitals(x))
    rho2 = rho2_batch(box, x, np.full_like(x, box.L / 2))
    return np.column_stack([x, rho1, rho2])
