"""Compactly supported, even, repulsive measure potentials.

A potential is a sum of Dirac atoms and a piecewise-linear density, plus an
optional hard core of radius `hard_core` (the scattering solution is pinned
to zero on [-hard_core, hard_core]).  Matrix potentials act on the pair
space C^d (x) C^d and are V = v I + Vtilde.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spin_algebra import projectors_for_dim

SYMMETRY_TOL = 1e-10


def _as_density(density):
    if density is None:
        return None
    xs, vals = density
    xs = np.asarray(xs, dtype=float)
    vals = np.asarray(vals)
    if xs.ndim != 1 or len(xs) < 2 or vals.shape[0] != len(xs):
        raise ValueError("density needs at least two nodes and one value per node")
    if np.any(np.diff(xs) <= 0):
        raise ValueError("density nodes must be strictly increasing")
    return xs, vals


def _interp_density(xs, vals, x):
    """Piecewise-linear interpolation, zero outside [xs[0], xs[-1]]."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out_shape = x.shape + vals.shape[1:]
    flat = vals.reshape(len(xs), -1)
    res = np.empty((x.size, flat.shape[1]), dtype=flat.dtype)
    for j in range(flat.shape[1]):
        res[:, j] = np.interp(x.ravel(), xs, flat[:, j], left=0.0, right=0.0)
    return res.reshape(out_shape)


@dataclass(frozen=True)
class ScalarPotential:
    """v = sum_k w_k delta(x - x_k) + density(x), even in x, supported in [-R0, R0]."""

    atoms: tuple = ()
    density: tuple | None = field(default=None, repr=False)
    R0: float = 0.0
    hard_core: float = 0.0

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "density", _as_density(self.density))
        R0 = float(self.R0)
        if R0 < 0 or self.hard_core < 0:
            raise ValueError("R0 and hard_core must be nonnegative")
        if self.hard_core > R0:
            raise ValueError("hard-core radius exceeds the support radius R0")
        for x, w in atoms:
            if w < 0:
                raise ValueError(f"atom weight {w} at x={x} is negative (potential must be repulsive)")
            if abs(x) > R0 + 1e-14:
                raise ValueError(f"atom at x={x} lies outside [-R0, R0]")
        if not _atoms_even(atoms):
            raise ValueError("atoms are not symmetric under x -> -x")
        if self.density is not None:
            xs, vals = self.density
            if vals.ndim != 1:
                raise ValueError("scalar density values must be one-dimensional")
            if np.any(vals < 0):
                raise ValueError("density must be nonnegative")
            if xs[0] < -R0 - 1e-14 or xs[-1] > R0 + 1e-14:
                raise ValueError("density nodes lie outside [-R0, R0]")
            if not _density_even(xs, vals):
                raise ValueError("density is not even in x")

    def density_at(self, x):
        if self.density is None:
            return np.zeros(np.shape(x))
        xs, vals = self.density
        return _interp_density(xs, vals, x)

    @property
    def breakpoints(self):
        pts = [x for x, _ in self.atoms]
        if self.density is not None:
            pts.extend(self.density[0].tolist())
        return pts


def _atoms_even(atoms, tol=SYMMETRY_TOL):
    pts = sorted(atoms)
    mirror = sorted((-x, w) for x, w in atoms)
    return all(abs(a[0] - b[0]) <= tol and np.allclose(a[1], b[1], atol=tol) for a, b in zip(pts, mirror))


def _density_even(xs, vals, tol=SYMMETRY_TOL):
    mirrored = _interp_density(xs, vals, -xs)
    return np.max(np.abs(mirrored - vals)) <= tol * max(1.0, np.max(np.abs(vals)))


def delta(c: float) -> ScalarPotential:
    """Contact interaction 2c delta(x)."""
    if c <= 0:
        raise ValueError("c must be positive")
    return ScalarPotential(atoms=((0.0, 2 * c),), R0=0.0)


def double_delta(c: float, R0: float) -> ScalarPotential:
    """2c (delta(x - R0) + delta(x + R0))."""
    if c <= 0 or R0 <= 0:
        raise ValueError("c and R0 must be positive")
    return ScalarPotential(atoms=((-R0, 2 * c), (R0, 2 * c)), R0=R0)


def hard_core(a: float) -> ScalarPotential:
    if a <= 0:
        raise ValueError("hard-core radius must be positive")
    return ScalarPotential(R0=a, hard_core=a)


def square_barrier(height: float, R0: float, n: int = 2) -> ScalarPotential:
    """Constant density `height` on [-R0, R0]; drops to zero outside."""
    xs = np.linspace(-R0, R0, max(n, 2))
    return ScalarPotential(density=(xs, np.full(len(xs), float(height))), R0=R0)


def tent(height: float, R0: float) -> ScalarPotential:
    """Triangular density height * (1 - |x|/R0)."""
    xs = np.array([-R0, 0.0, R0])
    return ScalarPotential(density=(xs, np.array([0.0, height, 0.0])), R0=R0)


@dataclass(frozen=True)
class MatrixPotential:
    """V = v I + Vtilde on the pair space of dimension dim = d^2."""

    dim: int
    scalar: ScalarPotential = field(default_factory=ScalarPotential)
    atoms: tuple = ()
    density: tuple | None = field(default=None, repr=False)
    R0: float | None = None

    def __post_init__(self):
        dim = int(self.dim)
        proj = projectors_for_dim(dim)
        atoms = tuple((float(x), np.array(W, dtype=complex if np.iscomplexobj(W) else float)) for x, W in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "density", _as_density(self.density))
        R0 = self.scalar.R0 if self.R0 is None else float(self.R0)
        object.__setattr__(self, "R0", max(R0, self.scalar.R0))
        for x, W in atoms:
            if W.shape != (dim, dim):
                raise ValueError(f"matrix atom at x={x} has shape {W.shape}, expected {(dim, dim)}")
            if abs(x) > self.R0 + 1e-14:
                raise ValueError(f"matrix atom at x={x} lies outside [-R0, R0]")
        if self.density is not None:
            xs, vals = self.density
            if vals.shape[1:] != (dim, dim):
                raise ValueError("matrix density values must have shape (n, dim, dim)")
            if xs[0] < -self.R0 - 1e-14 or xs[-1] > self.R0 + 1e-14:
                raise ValueError("matrix density nodes lie outside [-R0, R0]")
            if not _density_even(xs, vals):
                raise ValueError("matrix density is not even in x")
        if not _atoms_even(atoms):
            raise ValueError("matrix atoms are not symmetric under x -> -x")
        self._validate(proj)

    def _validate(self, proj):
        for W in [W for _, W in self.merged_atoms()] + list(self._density_samples()):
            if np.max(np.abs(W - W.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(W))):
                raise ValueError("potential is not Hermitian")
            if np.max(np.abs(W @ proj.SWAP - proj.SWAP @ W)) > 1e-10 * max(1.0, np.max(np.abs(W))):
                raise ValueError("potential does not commute with the pair swap")
            lo = np.linalg.eigvalsh((W + W.conj().T) / 2)[0]
            if lo < -1e-10 * max(1.0, np.max(np.abs(W))):
                raise ValueError(f"potential is not positive semidefinite (eigenvalue {lo:.3e})")

    @property
    def hard_core(self) -> float:
        return self.scalar.hard_core

    @property
    def is_complex(self) -> bool:
        mats = [W for _, W in self.atoms]
        if self.density is not None:
            mats.append(self.density[1])
        return any(np.iscomplexobj(m) and np.max(np.abs(np.imag(m)), initial=0) > 0 for m in mats)

    def merged_atoms(self):
        """All atoms as (x, matrix weight), scalar atoms included as w I."""
        eye = np.eye(self.dim)
        table = {}
        for x, w in self.scalar.atoms:
            table[x] = table.get(x, 0) + w * eye
        for x, W in self.atoms:
            table[x] = table.get(x, 0) + W
        return sorted(table.items(), key=lambda t: t[0])

    def has_density(self) -> bool:
        return self.scalar.density is not None or self.density is not None

    def density_at(self, x):
        """Total density matrix at points x, shape (len(x), dim, dim)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = self.scalar.density_at(x)[:, None, None] * np.eye(self.dim)
        if self.density is not None:
            out = out + _interp_density(self.density[0], self.density[1], x)
        return out

    def _density_samples(self):
        pts = []
        if self.scalar.density is not None:
            pts.extend(self.scalar.density[0])
        if self.density is not None:
            pts.extend(self.density[0])
        if not pts:
            return []
        return list(self.density_at(np.array(pts)))

    @property
    def breakpoints(self):
        pts = self.scalar.breakpoints + [x for x, _ in self.atoms]
        if self.density is not None:
            pts.extend(self.density[0].tolist())
        return pts

    def total_variation(self) -> float:
        """Integral of ||Vtilde|| (operator norm), atoms plus density by trapezoid."""
        tv = sum(np.linalg.norm(W, 2) for _, W in self.atoms)
        if self.density is not None:
            xs, vals = self.density
            norms = np.array([np.linalg.norm(v, 2) for v in vals])
            tv += np.trapezoid(norms, xs)
        return float(tv)

    @classmethod
    def from_scalar(cls, v: ScalarPotential, J) -> "MatrixPotential":
        from .spin_algebra import local_dim

        d = local_dim(J)
        return cls(dim=d * d, scalar=v)
