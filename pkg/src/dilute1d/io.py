"""JSON documents (schema "dilute1d/1") and a deterministic writer."""
from __future__ import annotations

import json
import math

import numpy as np

from .potentials import MatrixPotential, ScalarPotential
from .spin_algebra import build_coupling, build_pair_projectors

SCHEMA = "dilute1d/1"


class ConfigError(ValueError):
    """Malformed or inconsistent input document."""


def _float(x) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    if s in ("0", "-0"):
        return "0.0"
    if "." not in s and "e" not in s and "inf" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float at 17 significant digits and infinities as strings."""
    out = []
    _write(obj, out, indent, 0)
    return "".join(out) + "\n"


def _write(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, (np.integer,)):
        obj = int(obj)
    if isinstance(obj, (np.bool_,)):
        obj = bool(obj)
    if obj is None or isinstance(obj, (bool, str)):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, complex):
        _write({"re": obj.real, "im": obj.imag}, out, indent, level)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _write(v, out, indent, level + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            parts = []
            for v in obj:
                sub = []
                _write(v, sub, indent, level + 1)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _write(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_document(path_or_dict):
    if isinstance(path_or_dict, dict):
        doc = dict(path_or_dict)
    else:
        try:
            with open(path_or_dict) as fh:
                doc = json.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"input file not found: {path_or_dict}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path_or_dict}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("top-level JSON value must be an object")
    schema = doc.pop("schema", SCHEMA)
    if schema != SCHEMA:
        raise ConfigError(f"unsupported schema {schema!r}, expected {SCHEMA!r}")
    return doc


def _check_keys(doc, allowed, where):
    extra = set(doc) - set(allowed)
    if extra:
        raise ConfigError(f"unknown field(s) in {where}: {', '.join(sorted(extra))}")


def _matrix(entry, key, where):
    re = np.asarray(entry[key], dtype=float)
    im_key = key + "_imag"
    if im_key in entry:
        return re + 1j * np.asarray(entry[im_key], dtype=float)
    return re


def _atoms(items, where, matrix=False):
    atoms = []
    for i, a in enumerate(items or []):
        allowed = ("x", "weight", "weight_imag") if matrix else ("x", "weight")
        _check_keys(a, allowed, f"{where}.atoms[{i}]")
        if "x" not in a or "weight" not in a:
            raise ConfigError(f"{where}.atoms[{i}] needs 'x' and 'weight'")
        atoms.append((float(a["x"]), _matrix(a, "weight", where) if matrix else float(a["weight"])))
    return tuple(atoms)


def _density(d, where, matrix=False):
    if d is None:
        return None
    allowed = ("xs", "vals", "vals_imag") if matrix else ("xs", "vals")
    _check_keys(d, allowed, f"{where}.density")
    if "xs" not in d or "vals" not in d:
        raise ConfigError(f"{where}.density needs 'xs' and 'vals'")
    vals = _matrix(d, "vals", where) if matrix else np.asarray(d["vals"], dtype=float)
    return np.asarray(d["xs"], dtype=float), vals


POTENTIAL_FIELDS = ("R0", "atoms", "density", "hard_core", "matrix_part", "dim", "J")


def parse_potential(doc):
    """Return a ScalarPotential, or a MatrixPotential when 'dim', 'J' or
    'matrix_part' is present."""
    doc = load_document(doc)
    _check_keys(doc, POTENTIAL_FIELDS, "potential")
    try:
        scalar = ScalarPotential(atoms=_atoms(doc.get("atoms"), "potential"),
                                 density=_density(doc.get("density"), "potential"),
                                 R0=float(doc.get("R0", 0.0)), hard_core=float(doc.get("hard_core", 0.0)))
        if not any(k in doc for k in ("dim", "J", "matrix_part")):
            return scalar
        if "J" in doc:
            d = build_pair_projectors(float(doc["J"])).d
            dim = d * d
            if "dim" in doc and int(doc["dim"]) != dim:
                raise ConfigError("'dim' disagrees with 'J'")
        elif "dim" in doc:
            dim = int(doc["dim"])
        else:
            raise ConfigError("matrix potentials need 'dim' or 'J'")
        mp = doc.get("matrix_part") or {}
        _check_keys(mp, ("atoms", "density"), "matrix_part")
        return MatrixPotential(dim=dim, scalar=scalar, atoms=_atoms(mp.get("atoms"), "matrix_part", matrix=True),
                               density=_density(mp.get("density"), "matrix_part", matrix=True),
                               R0=float(doc.get("R0", 0.0)))
    except ConfigError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid potential: {exc}") from exc


def potential_to_dict(pot) -> dict:
    if isinstance(pot, ScalarPotential):
        doc = {"schema": SCHEMA, "R0": pot.R0, "atoms": [{"x": x, "weight": w} for x, w in pot.atoms]}
        if pot.density is not None:
            doc["density"] = {"xs": pot.density[0], "vals": pot.density[1]}
        if pot.hard_core:
            doc["hard_core"] = pot.hard_core
        return doc
    doc = potential_to_dict(pot.scalar)
    doc["R0"] = pot.R0
    doc["dim"] = pot.dim
    mp = {}
    if pot.atoms:
        mp["atoms"] = [_matrix_entry(x, W, "weight") for x, W in pot.atoms]
    if pot.density is not None:
        dens = {"xs": pot.density[0]}
        dens.update(_matrix_values(pot.density[1], "vals"))
        mp["density"] = dens
    if mp:
        doc["matrix_part"] = mp
    return doc


def _matrix_values(M, key):
    M = np.asarray(M)
    if np.iscomplexobj(M) and np.any(M.imag != 0):
        return {key: M.real, key + "_imag": M.imag}
    return {key: np.real(M)}


def _matrix_entry(x, W, key):
    e = {"x": x}
    e.update(_matrix_values(W, key))
    return e


CHAIN_FIELDS = ("J", "N", "bc", "coupling", "solver", "max_iter", "tol", "seed")


def parse_chain(doc):
    from .spin_chain import SpinChainSpec

    doc = load_document(doc)
    _check_keys(doc, CHAIN_FIELDS, "chain")
    coup = dict(doc.get("coupling", {"kind": "ls"}))
    _check_keys(coup, ("kind", "c", "c_prime", "M", "M_imag"), "chain.coupling")
    try:
        J = float(doc["J"])
        proj = build_pair_projectors(J)
        kind = coup.get("kind", "ls")
        M = _matrix(coup, "M", "coupling") if "M" in coup else None
        coupling = build_coupling(kind, proj, c=coup.get("c"), c_prime=coup.get("c_prime"), M=M)
        return SpinChainSpec(J=J, N=int(doc["N"]), coupling=coupling, bc=doc.get("bc", "periodic"),
                             solver=doc.get("solver", "auto"), max_iter=int(doc.get("max_iter", 500)),
                             tol=float(doc.get("tol", 1e-10)), seed=int(doc.get("seed", 0)))
    except KeyError as exc:
        raise ConfigError(f"chain spec missing field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid chain spec: {exc}") from exc


BETHE_FIELDS = ("model", "rho", "c", "grids", "tabulate")
GRID_FIELDS = ("n_k", "n_lambda", "B_cut_over_c", "panels", "method", "damping", "tol", "max_iter")


def parse_bethe(doc):
    """Return (model, rho, c, BetheGrids, tabulate)."""
    from .bethe import BetheGrids

    doc = load_document(doc)
    _check_keys(doc, BETHE_FIELDS, "bethe")
    grids = doc.get("grids") or {}
    _check_keys(grids, GRID_FIELDS, "bethe.grids")
    try:
        model = doc.get("model", "ll")
        if model not in ("ll", "yg"):
            raise ConfigError(f"model must be 'll' or 'yg', got {model!r}")
        return model, float(doc["rho"]), float(doc["c"]), BetheGrids(**grids), bool(doc.get("tabulate", False))
    except KeyError as exc:
        raise ConfigError(f"bethe spec missing field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid bethe spec: {exc}") from exc


EXPAND_FIELDS = ("N", "L", "a_e", "a_o", "eps_spin", "statistics", "R0", "J", "potential", "R")


def parse_expand(doc):
    doc = load_document(doc)
    _check_keys(doc, EXPAND_FIELDS, "expand")
    return doc
