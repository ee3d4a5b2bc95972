"""Lowest eigenpair of a Hermitian operator by Lanczos with full reorthogonalization."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal


class LanczosConvergenceError(RuntimeError):
    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


@dataclass
class LanczosResult:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    history: list


def lanczos_ground(apply, dim, *, max_iter=500, tol=1e-10, seed=0, dtype=float, v0=None) -> LanczosResult:
    """Smallest eigenvalue of the operator `apply` acting on vectors of length dim.

    Converged when the Ritz value moves by less than `tol` between checks and
    the true residual ||H x - E x|| is at most `tol` (up to the operator
    scale).  The Krylov basis is stored so every new vector can be
    reorthogonalized twice against all previous ones.
    """
    rng = np.random.default_rng(seed)
    if v0 is None:
        v = rng.normal(size=dim)
        if np.dtype(dtype).kind == "c":
            v = v + 1j * rng.normal(size=dim)
    else:
        v = np.array(v0, dtype=dtype)
    v = v.astype(dtype) / np.linalg.norm(v)
    m = min(max_iter, dim)
    Q = np.zeros((m + 1, dim), dtype=dtype)
    alpha = np.zeros(m)
    beta = np.zeros(m)
    Q[0] = v
    history = []
    last = np.inf
    k = 0
    for k in range(m):
        w = apply(Q[k])
        alpha[k] = np.real(np.vdot(Q[k], w))
        w = w - alpha[k] * Q[k] - (beta[k - 1] * Q[k - 1] if k > 0 else 0)
        for _ in range(2):
            w = w - Q[: k + 1].T @ (Q[: k + 1].conj() @ w)
        b = np.linalg.norm(w)
        beta[k] = b
        theta, S = eigh_tridiagonal(alpha[: k + 1], beta[:k], select="i", select_range=(0, 0))
        ritz = float(theta[0])
        resid_est = abs(b * S[-1, 0])
        history.append(ritz)
        breakdown = b < 1e-13 * max(1.0, abs(ritz))
        if breakdown or (abs(ritz - last) < tol and resid_est < tol):
            break
        last = ritz
        Q[k + 1] = w / b
    n = k + 1
    theta, S = eigh_tridiagonal(alpha[:n], beta[: n - 1], select="i", select_range=(0, 0))
    x = S[:, 0] @ Q[:n]
    x /= np.linalg.norm(x)
    Hx = apply(x)
    value = float(np.real(np.vdot(x, Hx)))
    residual = float(np.linalg.norm(Hx - value * x))
    if residual > tol * max(1.0, abs(value)):
        raise LanczosConvergenceError(
            f"Lanczos did not converge in {n} iterations (residual {residual:.3e})", history)
    return LanczosResult(value, x, residual, n, history)
