"""Thermodynamic Bethe-ansatz ground states of the Lieb-Liniger and
spin-1/2 Yang-Gaudin gases (interaction 2c delta).

Lieb-Liniger:
    2 pi f(k) = 1 + int_{-Q}^{Q} 2c f(k') / (c^2 + (k - k')^2) dk'
Yang-Gaudin (M = N/2, B = infinity truncated to B_cut):
    2 pi sigma(L) = -int 2c sigma(L') / (c^2 + (L - L')^2) dL' + int_{-Q}^{Q} 4c f(k) / (c^2 + 4(k - L)^2) dk
    2 pi f(k)     = 1 + int 4c sigma(L') / (c^2 + 4(k - L')^2) dL'
with rho = int f, M/L = int sigma, e = int k^2 f.  Q is tuned so int f = rho.

Both systems are linear in the unknown densities; the Nystrom discretization
on Gauss-Legendre nodes is solved directly (default) or by damped fixed-point
iteration.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

log = logging.getLogger(__name__)


class BetheConvergenceError(RuntimeError):
    def __init__(self, message, history=()):
        super().__init__(message)
        self.history = list(history)


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class BetheGrids:
    n_k: int = 64
    n_lambda: int = 1024
    B_cut_over_c: float = 20.0
    panels: int = 64  # Gauss-Legendre panels on [-B_cut, B_cut]
    k_panel_width: float = 2.0  # target panel width on [-Q, Q], in units of c
    method: str = "direct"  # direct | fixed_point
    damping: float = 0.5
    tol: float = 1e-10
    max_iter: int = 100_000

    def __post_init__(self):
        if self.n_k < 64 or self.n_lambda < 64:
            raise ValueError("node counts must be at least 64")
        if self.B_cut_over_c < 20:
            raise ValueError("B_cut must be at least 20 c")
        if self.n_lambda % self.panels:
            raise ValueError("n_lambda must be a multiple of panels")
        if self.method not in ("direct", "fixed_point"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class BetheSolution:
    model: str
    rho: float
    c: float
    Q: float
    k: np.ndarray = field(repr=False)
    wk: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    e_density: float
    iterations: int
    residual: float
    lam: np.ndarray | None = field(default=None, repr=False)
    wl: np.ndarray | None = field(default=None, repr=False)
    sigma: np.ndarray | None = field(default=None, repr=False)
    m_density: float | None = None
    B_cut: float | None = None

    @property
    def density(self) -> float:
        return float(self.wk @ self.f)

    @property
    def e_per_rho3(self) -> float:
        return self.e_density / self.rho ** 3


def gauss_legendre(a, b, n, panels=1):
    x, w = np.polynomial.legendre.leggauss(n // panels)
    edges = np.linspace(a, b, panels + 1)
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (hi - lo) * x + 0.5 * (hi + lo))
        ws.append(0.5 * (hi - lo) * w)
    return np.concatenate(xs), np.concatenate(ws)


def _k_grid(Q, c, grids):
    """Nodes on [-Q, Q]; split into panels no wider than k_panel_width * c
    (at least 16 nodes each) so the Lorentzian kernel stays resolved at weak coupling."""
    want = math.ceil(2 * Q / (grids.k_panel_width * c))
    panels = max(1, min(want, grids.n_k // 16))
    return gauss_legendre(-Q, Q, (grids.n_k // panels) * panels, panels)


def _lorentz(x, c):
    """2c / (c^2 + x^2)."""
    return 2 * c / (c * c + x * x)


def _ll_densities(Q, c, grids):
    k, wk = _k_grid(Q, c, grids)
    K = _lorentz(k[:, None] - k[None, :], c) * wk[None, :]
    rhs = np.ones_like(k)
    if grids.method == "direct":
        f = np.linalg.solve(2 * np.pi * np.eye(len(k)) - K, rhs)
        it = 1
    else:
        f, it = _damped(lambda f: (rhs + K @ f) / (2 * np.pi), rhs / (2 * np.pi), grids)
    resid = np.max(np.abs(2 * np.pi * f - rhs - K @ f))
    return k, wk, f, it, resid


def _damped(update, x0, grids):
    x = x0
    history = []
    for it in range(1, grids.max_iter + 1):
        new = update(x)
        defect = np.max(np.abs(new - x))
        x = (1 - grids.damping) * x + grids.damping * new
        history.append(defect)
        if defect < grids.tol:
            return x, it
    raise BetheConvergenceError(f"fixed-point iteration stalled (defect {history[-1]:.3e})", history[-20:])


def _yg_densities(Q, c, grids):
    k, wk = _k_grid(Q, c, grids)
    B = grids.B_cut_over_c * c
    lam, wl = gauss_legendre(-B, B, grids.n_lambda, grids.panels)
    # 4c / (c^2 + 4x^2) = 2 * [2c / (c^2 + (2x)^2)]
    K_fs = 2 * _lorentz(2 * (k[:, None] - lam[None, :]), c)
    K_ss = _lorentz(lam[:, None] - lam[None, :], c)
    nk, nl = len(k), len(lam)
    A_fs = K_fs * wl[None, :]  # f <- sigma
    A_sf = K_fs.T * wk[None, :]  # sigma <- f
    A_ss = K_ss * wl[None, :]
    if grids.method == "direct":
        M = np.zeros((nk + nl, nk + nl))
        M[:nk, :nk] = 2 * np.pi * np.eye(nk)
        M[:nk, nk:] = -A_fs
        M[nk:, :nk] = -A_sf
        M[nk:, nk:] = 2 * np.pi * np.eye(nl) + A_ss
        rhs = np.concatenate([np.ones(nk), np.zeros(nl)])
        sol = np.linalg.solve(M, rhs)
        f, sigma, it = sol[:nk], sol[nk:], 1
    else:
        def update(x):
            f, s = x[:nk], x[nk:]
            return np.concatenate([(1 + A_fs @ s) / (2 * np.pi), (A_sf @ f - A_ss @ s) / (2 * np.pi)])

        x, it = _damped(update, np.concatenate([np.full(nk, 1 / (2 * np.pi)), np.zeros(nl)]), grids)
        f, sigma = x[:nk], x[nk:]
    resid = max(np.max(np.abs(2 * np.pi * f - 1 - A_fs @ sigma)),
                np.max(np.abs(2 * np.pi * sigma + A_ss @ sigma - A_sf @ f)))
    return k, wk, f, lam, wl, sigma, it, resid, B


def _tune_Q(density_of_Q, rho, Q0):
    """Bracket and solve int f(Q) = rho for Q (int f increases with Q)."""
    lo, hi = 0.5 * Q0, 2.0 * Q0
    for _ in range(200):
        if density_of_Q(lo) < rho:
            break
        lo *= 0.5
    else:
        raise BetheConvergenceError("could not bracket Q from below")
    for _ in range(200):
        if density_of_Q(hi) > rho:
            break
        hi *= 2.0
    else:
        raise BetheConvergenceError("could not bracket Q from above (kernel unresolved; increase n_k)")
    return brentq(lambda Q: density_of_Q(Q) - rho, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)


def solve_lieb_liniger(rho: float, c: float, grids: BetheGrids | None = None) -> BetheSolution:
    if not (rho > 0 and c > 0):
        raise ValueError("rho and c must be positive")
    grids = grids or BetheGrids()
    def dens(Q):
        _, wk, f, *_ = _ll_densities(Q, c, grids)
        return float(wk @ f)

    Q = _tune_Q(dens, rho, math.pi * rho)
    k, wk, f, it, resid = _ll_densities(Q, c, grids)
    e = float(wk @ (k * k * f))
    return BetheSolution("ll", rho, c, Q, k, wk, f, e, it, float(resid))


def solve_yang_gaudin(rho: float, c: float, grids: BetheGrids | None = None) -> BetheSolution:
    if not (rho > 0 and c > 0):
        raise ValueError("rho and c must be positive")
    grids = grids or BetheGrids()

    def dens(Q):
        k, wk, f, *_ = _yg_densities(Q, c, grids)
        return float(wk @ f)

    Q = _tune_Q(dens, rho, math.pi * rho)
    k, wk, f, lam, wl, sigma, it, resid, B = _yg_densities(Q, c, grids)
    tail = max(abs(sigma[0]), abs(sigma[-1])) / np.max(np.abs(sigma))
    if tail > 1e-8:
        warnings.warn(f"spin density not negligible at the cutoff (ratio {tail:.2e}); increase B_cut",
                      TruncationWarning, stacklevel=2)
    e = float(wk @ (k * k * f))
    return BetheSolution("yg", rho, c, Q, k, wk, f, e, it, float(resid), lam, wl, sigma,
                         float(wl @ sigma), B)


@dataclass(frozen=True)
class NeumannBound:
    value: float
    kappa: float
    in_validity: bool
    note: str = "kappa is a knob, not a constant fixed by the bound"

    def __float__(self):
        return self.value


def ll_neumann_lower_bound(N: int, L: float, c: float, kappa: float = 1.0, max_rho_over_c: float = 0.1) -> NeumannBound:
    """(pi^2/3) N rho^2 (1 - 4 rho/c - kappa N^{-2/3});  c = inf allowed."""
    if N < 1 or L <= 0 or c <= 0:
        raise ValueError("need N >= 1, L > 0, c > 0")
    rho = N / L
    value = (math.pi ** 2 / 3) * N * rho ** 2 * (1 - 4 * rho / c - kappa * N ** (-2 / 3))
    return NeumannBound(value, kappa, rho / c <= max_rho_over_c)
