"""Reference potentials shared by the verification suite, the tests and the demos."""
from __future__ import annotations

import numpy as np

from . import potentials
from .potentials import MatrixPotential
from .spin_algebra import build_pair_projectors


def llh_delta(c=2.0, c_prime=1.0) -> MatrixPotential:
    """(2c' P_A + 2c P_S) delta_0 on the spin-1/2 pair space."""
    proj = build_pair_projectors(0.5)
    W = 2 * c_prime * proj.P_A + 2 * c * proj.P_S
    return MatrixPotential(dim=4, atoms=((0.0, W),), R0=0.0)


def spin_one_mixed(R0=0.2) -> MatrixPotential:
    """Spin-1 potential: scalar tent plus a P_S-weighted atom pair and a
    P_A-weighted constant density on [-R0, R0]."""
    proj = build_pair_projectors(1.0)
    scalar = potentials.tent(30.0, R0)
    xs = np.linspace(-R0, R0, 5)
    vals = np.array([10.0 * proj.P_A for _ in xs])
    atoms = ((-0.5 * R0, 4.0 * proj.P_S), (0.5 * R0, 4.0 * proj.P_S))
    return MatrixPotential(dim=9, scalar=scalar, atoms=atoms, density=(xs, vals), R0=R0)


def scalar_fixtures():
    """name -> (ScalarPotential, matching radius R)."""
    return {
        "delta_c1": (potentials.delta(1.0), 1.0),
        "double_delta": (potentials.double_delta(2.0, 0.1), 0.5),
        "square_barrier": (potentials.square_barrier(50.0, 0.3), 1.0),
        "tent": (potentials.tent(40.0, 0.25), 1.0),
        "hard_core": (potentials.hard_core(0.05), 1.0),
    }


def matrix_fixtures():
    """name -> (MatrixPotential, R, bc_mode)."""
    out = {}
    for name, (v, R) in scalar_fixtures().items():
        out[name + "_J1/2"] = (MatrixPotential.from_scalar(v, 0.5), R, "fermionic")
    out["double_delta_J1"] = (MatrixPotential.from_scalar(potentials.double_delta(2.0, 0.1), 1.0), 0.5, "fermionic")
    out["llh_delta"] = (llh_delta(), 1.0, "symmetric")
    out["spin_one_mixed"] = (spin_one_mixed(), 1.0, "fermionic")
    return out
