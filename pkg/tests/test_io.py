import json
import math

import numpy as np
import pytest

from dilute1d import fixtures, io
from dilute1d.potentials import MatrixPotential, ScalarPotential
from dilute1d.scattering import solve_matrix_scattering, solve_scalar_scattering


def test_dumps_keeps_17_digits_and_infinities():
    text = io.dumps({"x": 0.1, "y": [1.0, -math.inf], "z": math.nan, "n": 3, "b": True})
    doc = json.loads(text)
    assert doc["x"] == 0.1 and "0.10000000000000001" in text
    assert doc["y"] == [1.0, "-inf"] and doc["z"] == "nan"
    assert text.endswith("\n")
    assert io.dumps(np.array([0.5, 2.0])) == "[0.5, 2.0]\n"


@pytest.mark.parametrize("name", sorted(fixtures.scalar_fixtures()))
def test_scalar_roundtrip(name):
    pot, R = fixtures.scalar_fixtures()[name]
    back = io.parse_potential(json.loads(io.dumps(io.potential_to_dict(pot))))
    assert isinstance(back, ScalarPotential)
    for parity in ("even", "odd"):
        a = solve_scalar_scattering(pot, R, parity).a
        b = solve_scalar_scattering(back, R, parity).a
        assert a == b or (math.isinf(a) and a == b)


def test_matrix_roundtrip_complex():
    pot = fixtures.spin_one_mixed()
    # v is swap-invariant, so v v^dagger is a valid complex weight
    v = np.zeros(9, complex)
    v[[1, 2, 3, 6]] = 1, 1j, 1, 1j
    W = np.outer(v, v.conj())
    pot = MatrixPotential(dim=9, scalar=pot.scalar, atoms=pot.atoms + ((0.0, W),), density=pot.density, R0=pot.R0)
    doc = json.loads(io.dumps(io.potential_to_dict(pot)))
    assert "weight_imag" in doc["matrix_part"]["atoms"][-1]
    back = io.parse_potential(doc)
    A = solve_matrix_scattering(pot, 0.5, check_radius=None).A
    B = solve_matrix_scattering(back, 0.5, check_radius=None).A
    assert np.allclose(A, B, atol=1e-14)


def test_rejects_unknown_fields_and_schema():
    with pytest.raises(io.ConfigError, match="unknown field"):
        io.parse_potential({"R0": 0.1, "atom": []})
    with pytest.raises(io.ConfigError, match="unknown field"):
        io.parse_chain({"J": 0.5, "N": 4, "coupling": {"kind": "ls", "strength": 1}})
    with pytest.raises(io.ConfigError, match="schema"):
        io.parse_potential({"schema": "other/2", "R0": 0.0})
    with pytest.raises(io.ConfigError, match="not found"):
        io.load_document("/nonexistent/file.json")
    with pytest.raises(io.ConfigError):
        io.parse_potential({"J": 0.5, "dim": 9})
    with pytest.raises(io.ConfigError):
        io.parse_bethe({"model": "xx", "rho": 1, "c": 1})


def test_parse_chain_and_bethe():
    spec = io.parse_chain({"J": 1.0, "N": 6, "coupling": {"kind": "llh", "c": 2, "c_prime": 1}})
    assert spec.N == 6 and spec.bc == "periodic"
    model, rho, c, grids, tab = io.parse_bethe({"model": "yg", "rho": 1, "c": 50, "grids": {"n_k": 64}})
    assert (model, rho, c, grids.n_k, tab) == ("yg", 1.0, 50.0, 64, False)
