"""Acceptance criteria as functions returning CriterionResult.

Used by `dilute1d verify` and by the acceptance tests.  Each check is
deterministic for a fixed seed; the report contains no timings so two runs
serialize to identical bytes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bethe, expansion, fixtures, free_fermi, io, potentials, scattering, spin_chain
from .potentials import MatrixPotential
from .spin_algebra import build_pair_projectors

LN2 = math.log(2)
PI2_3 = math.pi ** 2 / 3


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"

    def as_dict(self):
        return {"number": self.number, "name": self.name, "passed": bool(self.passed), "detail": self.detail}


DEFAULT_TOLERANCES = {
    "closed_form": 1e-8,
    "matrix_reduction": 1e-8,
    "energy_identity": 1e-6,
    "r_independence": 1e-8,
    "dyson": 1e-8,
    "hard_core": 1e-8,
    "lanczos_dense": 1e-9,
    "small_chain": 1e-10,
    "tonks": 1e-4,
    "m_density": 1e-4,
    "band": 20.0,
    "hard_core_band": 1.5,
    "margin_zero": 1e-12,
}

PROFILES = {
    "default": {},
    "strict": {"energy_identity": 1e-8, "dyson": 1e-10, "hard_core": 1e-10},
    "loose": {k: v * 10 for k, v in DEFAULT_TOLERANCES.items() if k not in ("band", "hard_core_band")},
}


def tolerances(profile: str = "default", overrides: dict | None = None) -> dict:
    if profile not in PROFILES:
        raise ValueError(f"unknown tolerance profile {profile!r}; choose from {sorted(PROFILES)}")
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(PROFILES[profile])
    for k, v in (overrides or {}).items():
        if k not in tol:
            raise ValueError(f"unknown tolerance key {k!r}")
        tol[k] = float(v)
    return tol


def c01_scattering_closed_forms(tol, seed=0):
    checks = []
    for c in (0.5, 1.0, 10.0, 100.0):
        v = potentials.delta(c)
        ae = scattering.solve_scalar_scattering(v, 1.0, "even").a
        ao = scattering.solve_scalar_scattering(v, 1.0, "odd").a
        checks.append({"potential": f"delta c={c}", "a_e": ae, "a_e_expected": -2 / c,
                       "a_o": ao, "a_o_expected": 0.0,
                       "ok": abs(ae + 2 / c) <= tol["closed_form"] and abs(ao) <= tol["closed_form"]})
    c, R0 = 2.0, 0.1
    v = potentials.double_delta(c, R0)
    ae = scattering.solve_scalar_scattering(v, 0.5, "even").a
    ao = scattering.solve_scalar_scattering(v, 0.5, "odd").a
    ae_exp = R0 - 1 / c
    ao_stated = R0 - R0 / (1 - R0 * c)
    ao_alt = R0 - R0 / (1 + R0 * c)
    checks.append({"potential": f"double delta c={c} R0={R0}", "a_e": ae, "a_e_expected": ae_exp,
                   "a_o": ao, "a_o_expected": ao_stated, "a_o_sign_flipped_formula": ao_alt,
                   "ok": abs(ae - ae_exp) <= tol["closed_form"] and abs(ao - ao_stated) <= tol["closed_form"]})
    return CriterionResult(1, "scattering closed forms (delta, double delta)", all(x["ok"] for x in checks),
                           {"checks": checks})


def c02_matrix_reduction(tol, seed=0):
    rows = []
    for J in (0.5, 1.0):
        proj = build_pair_projectors(J)
        for name in ("double_delta", "square_barrier", "tent"):
            v, R = fixtures.scalar_fixtures()[name]
            ae = scattering.solve_scalar_scattering(v, R, "even").a
            ao = scattering.solve_scalar_scattering(v, R, "odd").a
            res = scattering.solve_matrix_scattering(MatrixPotential.from_scalar(v, J), R, "fermionic", check_radius=None)
            err = float(np.linalg.norm(res.A - (ae * proj.P_A + ao * proj.P_S), 2))
            rows.append({"J": J, "potential": name, "error": err, "ok": err <= tol["matrix_reduction"]})
    return CriterionResult(2, "matrix reduction A = a_e P_A + a_o P_S", all(r["ok"] for r in rows), {"rows": rows})


def c03_energy_identity(tol, seed=0):
    rows = []
    for name, (V, R, bc) in fixtures.matrix_fixtures().items():
        res = scattering.solve_matrix_scattering(V, R, bc, check_radius=2.0)
        e = res.diagnostics["energy_identity_residual"]
        r = res.diagnostics["r_independence_residual"]
        rows.append({"potential": name, "energy_identity_residual": e, "r_independence_residual": r,
                     "ok": e <= tol["energy_identity"] and r <= tol["r_independence"]})
    return CriterionResult(3, "energy identity and R-independence", all(r["ok"] for r in rows), {"rows": rows})


def _random_polynomial(rng, parity, degree=6):
    powers = np.arange(0 if parity == "even" else 1, degree + 1, 2)
    coef = rng.normal(size=len(powers))

    def phi(x):
        x = np.asarray(x, dtype=float)
        return sum(cf * x ** p for cf, p in zip(coef, powers))

    def dphi(x):
        x = np.asarray(x, dtype=float)
        return sum(cf * p * x ** (p - 1) for cf, p in zip(coef, powers) if p > 0)

    return phi, dphi


def c04_dyson(tol, seed=0):
    v, R = fixtures.scalar_fixtures()["double_delta"]
    rng = np.random.default_rng(seed)
    out = {}
    for channel in ("even", "odd"):
        a = scattering.solve_scalar_scattering(v, R, channel).a
        gaps = []
        for _ in range(200):
            phi, dphi = _random_polynomial(rng, channel)
            scale = rng.uniform(1.0, 2.0)
            gaps.append(scattering.dyson_gap(phi, dphi, v, R, channel, interval=(-scale * R, scale * R), a=a))
        out[channel] = {"a": a, "min_gap": float(min(gaps))}
    passed = all(o["min_gap"] >= -tol["dyson"] for o in out.values())
    return CriterionResult(4, "Dyson gap nonnegative (double delta, both channels)", passed, out)


def c05_hard_core(tol, seed=0):
    fx = fixtures.matrix_fixtures()
    rows = []
    for name in ("double_delta_J1/2", "llh_delta", "square_barrier_J1/2"):
        V, R, bc = fx[name]
        viol = scattering.hard_core_pointwise_check(V, R, samples=1000, seed=seed, bc_mode=bc)
        rows.append({"potential": name, "max_violation": viol, "ok": viol <= tol["hard_core"]})
    return CriterionResult(5, "hard-core pointwise bound", all(r["ok"] for r in rows), {"rows": rows})


def c06_sandwich(tol, seed=0):
    rows = []
    agree = []
    for J, Ns in ((0.5, (4, 6, 8, 10, 12)), (1.0, (4, 6, 8))):
        for row in spin_chain.finite_size_sandwich(J, Ns, seed=seed):
            rows.append({"J": J, "N": row.N, "epsilon": row.epsilon, "lower": row.lower, "upper": row.upper,
                         "ok": bool(row.passed)})
    for J, N in ((0.5, 4), (0.5, 6), (0.5, 8), (0.5, 10), (1.0, 4), (1.0, 6)):
        dense = spin_chain.ground_energy_per_site(spin_chain.lai_sutherland_spec(J, N, solver="dense")).epsilon
        lanc = spin_chain.ground_energy_per_site(spin_chain.lai_sutherland_spec(J, N, solver="lanczos", seed=seed)).epsilon
        agree.append({"J": J, "N": N, "difference": abs(dense - lanc), "ok": abs(dense - lanc) <= tol["lanczos_dense"]})
    passed = all(r["ok"] for r in rows) and all(a["ok"] for a in agree)
    return CriterionResult(6, "spin chain 1/N sandwich and Lanczos vs dense", passed,
                           {"e_inf": {"J=1/2": spin_chain.thermodynamic_energy_per_site(0.5),
                                      "J=1": spin_chain.thermodynamic_energy_per_site(1.0)},
                            "rows": rows, "lanczos_vs_dense": agree})


def c07_small_chains(tol, seed=0):
    e2 = spin_chain.ground_energy_per_site(spin_chain.lai_sutherland_spec(0.5, 2, solver="dense")).epsilon
    e4 = spin_chain.ground_energy_per_site(spin_chain.lai_sutherland_spec(0.5, 4, solver="dense")).epsilon
    passed = abs(e2) <= tol["small_chain"] and abs(e4 - 0.25) <= tol["small_chain"]
    return CriterionResult(7, "small-chain oracles eps(2)=0, eps(4)=1/4", passed, {"eps2": e2, "eps4": e4})


def c08_llh_chain(tol, seed=0):
    eps = spin_chain.llh_chain_energy(4.0, 1.0, 12, seed=seed)
    ref = spin_chain.llh_thermodynamic(4.0, 1.0)
    return CriterionResult(8, "LLH chain c=4 c'=1 N=12 within 2/N", abs(eps - ref) <= 2 / 12,
                           {"epsilon": eps, "closed_form": ref, "difference": abs(eps - ref), "allowed": 2 / 12})


def c09_lieb_liniger(tol, seed=0):
    tonks = bethe.solve_lieb_liniger(1.0, 1e6)
    rel = abs(tonks.e_per_rho3 / PI2_3 - 1)
    rows = []
    for g in (0.005, 0.01, 0.02):
        s = bethe.solve_lieb_liniger(1.0, 1.0 / g)
        dev = abs(s.e_per_rho3 - PI2_3 * (1 - 4 * g))
        allowed = tol["band"] * g ** 2 * PI2_3
        rows.append({"rho_over_c": g, "e_per_rho3": s.e_per_rho3, "deviation": dev, "allowed": allowed,
                     "ok": dev <= allowed})
    passed = rel <= tol["tonks"] and all(r["ok"] for r in rows)
    return CriterionResult(9, "Lieb-Liniger Tonks limit and dilute band", passed,
                           {"tonks_relative_error": rel, "rows": rows, "band_constant": "calibrated"})


def c10_yang_gaudin(tol, seed=0):
    rows = []
    for g in (0.005, 0.01):
        s = bethe.solve_yang_gaudin(1.0, 1.0 / g)
        dev = abs(s.e_per_rho3 - PI2_3 * (1 - 4 * LN2 * g))
        allowed = tol["band"] * g ** 2 * PI2_3
        mdev = abs(s.m_density - 0.5)
        rows.append({"rho_over_c": g, "e_per_rho3": s.e_per_rho3, "deviation": dev, "allowed": allowed,
                     "m_density": s.m_density, "ok": dev <= allowed and mdev <= tol["m_density"]})
    return CriterionResult(10, "Yang-Gaudin M/L = rho/2 and dilute band", all(r["ok"] for r in rows),
                           {"rows": rows, "band_constant": "calibrated"})


def c11_end_to_end(tol, seed=0):
    rows = []
    for c in (200.0, 100.0):
        r = expansion.yg_cross_check(1.0, c)
        allowed = tol["band"] * (1.0 / c) ** 2 * PI2_3
        rows.append({"rho": 1.0, "c": c, "a_e": r.a_e, "a_o": r.a_o, "eps_spin": r.eps_spin,
                     "expansion": r.expansion, "bethe": r.bethe, "difference": r.difference,
                     "allowed": allowed, "ok": r.difference <= allowed})
    return CriterionResult(11, "end-to-end first-order formula vs Yang-Gaudin", all(r["ok"] for r in rows),
                           {"rows": rows})


def c12_hard_core_expansion(tol, seed=0):
    rows = []
    N, a = 10, 1.0
    for ra in (0.01, 0.02, 0.05):
        L = N * a / ra
        cmp = expansion.hard_core_compare(N, L, a)
        allowed = tol["hard_core_band"] * 3 * ra ** 2 * cmp.leading
        rows.append({"rho_a": ra, "exact": cmp.exact, "series": cmp.series, "gap": cmp.gap, "allowed": allowed,
                     "ok": cmp.gap <= allowed})
    return CriterionResult(12, "hard-core exact energy vs first-order formula", all(r["ok"] for r in rows),
                           {"rows": rows})


def c13_girardeau(tol, seed=0):
    cs = np.linspace(1.5, 10.0, 20)
    min_margin = math.inf
    for c in cs:
        for cp in np.linspace(0.5, c - 0.1, 20):
            min_margin = min(min_margin, expansion.llh_compare(1.0, float(c), float(cp)).margin)
    diag = max(abs(expansion.llh_compare(1.0, float(c), float(c)).margin) for c in cs)
    passed = min_margin > 0 and diag <= tol["margin_zero"]
    return CriterionResult(13, "Girardeau margin > 0 for c > c', = 0 at c = c'", passed,
                           {"min_margin_off_diagonal": min_margin, "max_abs_margin_diagonal": diag})


def c14_free_fermi(tol, seed=0):
    rows = []
    for N in (4, 8):
        rep = free_fermi.check_density_bounds(free_fermi.FreeFermiBox(N, float(N)), samples=10_000, seed=seed)
        rows.append({"N": N, "max_ratio": rep.max_ratio2, "fitted_c3": rep.fitted_c3, "fitted_c4": rep.fitted_c4,
                     "ok": rep.passed})
    return CriterionResult(14, "free-Fermi rho2 <= 8 pi^2 rho^4 Delta^2", all(r["ok"] for r in rows), {"rows": rows})


CRITERIA = [
    c01_scattering_closed_forms, c02_matrix_reduction, c03_energy_identity, c04_dyson, c05_hard_core,
    c06_sandwich, c07_small_chains, c08_llh_chain, c09_lieb_liniger, c10_yang_gaudin, c11_end_to_end,
    c12_hard_core_expansion, c13_girardeau, c14_free_fermi,
]


def run_criteria(tol=None, seed=0, only=None):
    tol = tol or tolerances()
    out = []
    for fn in CRITERIA:
        num = int(fn.__name__[1:3])
        if only and num not in only:
            continue
        out.append(fn(tol, seed))
    return out


def report_dict(results, seed, tol) -> dict:
    return {"schema": io.SCHEMA, "seed": seed, "tolerances": tol,
            "criteria": [r.as_dict() for r in results],
            "passed": sum(r.passed for r in results), "total": len(results)}


def c15_determinism(first_text: str, tol, seed=0):
    second = io.dumps(report_dict(run_criteria(tol, seed), seed, tol))
    same = second == first_text
    return CriterionResult(15, "determinism: repeated run is byte-identical", same,
                           {"bytes": len(first_text), "identical": same})


def run_all(tol=None, seed=0, determinism=True):
    """All criteria; the fifteenth reruns 1-14 and compares the serialized report."""
    tol = tol or tolerances()
    results = run_criteria(tol, seed)
    if determinism:
        results.append(c15_determinism(io.dumps(report_dict(results, seed, tol)), tol, seed))
    return results
