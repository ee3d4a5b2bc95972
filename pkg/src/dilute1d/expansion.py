"""First-order dilute energy expansion and its cross-model checks.

    E ~ N (pi^2/3) rho^2 (1 + 2 rho [a_e + (a_o - a_e) eps_spin])

For spin-1/2 with eps_spin = 1 - ln2 the bracket is ln2 a_e + (1 - ln2) a_o.
For bosons the roles of a_e and a_o swap.

The band multipliers used below (20 for the Bethe comparisons, 1.5 for the
hard core) are calibrated against fine-grid solver runs; they are not
constants of the asymptotic statement.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

from . import bethe, potentials, scattering, spin_chain

LN2 = math.log(2)
CALIBRATED_BAND = 20.0
CALIBRATED_HARD_CORE = 1.5
DILUTE_THRESHOLD = 0.1


@dataclass(frozen=True)
class ExpansionReport:
    N: float
    L: float
    rho: float
    a_e: float
    a_o: float
    eps_spin: float
    statistics: str
    leading: float
    correction: float | None
    total_first_order: float | None
    valid: bool
    dilute: bool
    message: str = ""

    def as_dict(self):
        return asdict(self)


def theorem1_energy(N, L, a_e, a_o, eps_spin, *, statistics: str = "fermion", R0: float = 0.0) -> ExpansionReport:
    """Evaluate the first-order formula.  a_e = -inf yields an invalid report
    (infinite error term) instead of arithmetic on infinities."""
    if N <= 0 or L <= 0:
        raise ValueError("N and L must be positive")
    if statistics not in ("fermion", "boson"):
        raise ValueError("statistics must be 'fermion' or 'boson'")
    if not 0.0 <= eps_spin <= 1.0:
        raise ValueError(f"eps_spin={eps_spin} outside [0, 1]")
    if math.isnan(a_e) or math.isnan(a_o) or math.isinf(a_o):
        raise ValueError("scattering lengths must be numbers; only a_e may be -inf")
    if a_e > a_o:
        raise ValueError(f"a_e={a_e} exceeds a_o={a_o}; repulsive potentials have a_e <= a_o")
    rho = N / L
    leading = N * (math.pi ** 2 / 3) * rho ** 2
    if math.isinf(a_e):
        return ExpansionReport(N, L, rho, a_e, a_o, eps_spin, statistics, leading, None, None,
                               valid=False, dilute=False,
                               message="invalid: a_e = -inf makes the error term infinite (not dilute)")
    if statistics == "fermion":
        bracket = a_e + (a_o - a_e) * eps_spin
    else:
        bracket = a_o + (a_e - a_o) * eps_spin
    correction = 2 * rho * bracket
    scale = rho * max(R0, a_o, abs(a_e))
    return ExpansionReport(N, L, rho, a_e, a_o, eps_spin, statistics, leading, correction,
                           leading * (1 + correction), valid=True, dilute=scale <= DILUTE_THRESHOLD)


@dataclass(frozen=True)
class HardCoreComparison:
    exact: float
    series: float
    leading: float
    gap: float
    allowed: float
    passed: bool


def hard_core_exact(N, L, a) -> float:
    """N (pi^2/3) (N / (L - N a))^2."""
    if a < 0:
        raise ValueError("hard-core radius must be nonnegative")
    if N * a >= L:
        raise ValueError("need N a < L")
    return N * (math.pi ** 2 / 3) * (N / (L - N * a)) ** 2


def hard_core_compare(N, L, a, eps_spin=0.5) -> HardCoreComparison:
    exact = hard_core_exact(N, L, a)
    rep = theorem1_energy(N, L, a, a, eps_spin, R0=a)
    rho_a = rep.rho * a
    allowed = CALIBRATED_HARD_CORE * 3 * rho_a ** 2 * rep.leading
    gap = abs(exact - rep.total_first_order)
    return HardCoreComparison(exact, rep.total_first_order, rep.leading, gap, allowed, gap <= allowed)


@dataclass(frozen=True)
class LLHComparison:
    ours: float
    girardeau: float
    margin: float
    eps_llh: float
    source: str


def girardeau_energy_shift(rho, c, c_prime) -> float:
    """-4 rho / (ln2 c + (1 - ln2) c')."""
    return -4 * rho / (LN2 * c + (1 - LN2) * c_prime)


def llh_compare(rho, c, c_prime, N_chain: int | None = None) -> LLHComparison:
    """ours = 2 rho eps^LLH(c, c'), from a finite ring of N_chain sites or,
    when N_chain is None, from the thermodynamic closed form."""
    if not (c > 0 and c_prime > 0 and rho > 0):
        raise ValueError("rho, c, c' must be positive")
    if c < c_prime:
        warnings.warn("c < c' lies outside the regime c >= c' > 0", stacklevel=2)
    if N_chain is None:
        eps = spin_chain.llh_thermodynamic(c, c_prime)
        source = "closed form"
    else:
        eps = spin_chain.llh_chain_energy(c, c_prime, N_chain)
        source = f"ring N={N_chain}"
    ours = 2 * rho * eps
    g = girardeau_energy_shift(rho, c, c_prime)
    return LLHComparison(ours, g, g - ours, eps, source)


def girardeau_margin_grid(c_values, c_prime_fracs, rho=1.0):
    """Margins on the grid c' = frac * c; rows (c, c', margin)."""
    rows = []
    for c in c_values:
        for fr in c_prime_fracs:
            cp = fr * c
            rows.append((c, cp, llh_compare(rho, c, cp).margin))
    return rows


@dataclass(frozen=True)
class YGCrossCheck:
    rho: float
    c: float
    a_e: float
    a_o: float
    eps_spin: float
    expansion: float  # per-volume energy from the first-order formula
    bethe: float  # per-volume energy from the Bethe solver
    difference: float
    allowed: float
    passed: bool
    m_density: float


def yg_cross_check(rho, c, R=1.0, grids=None) -> YGCrossCheck:
    """Scattering lengths of 2c delta, the spin-1/2 chain value 1 - ln2 and the
    first-order formula against the Yang-Gaudin Bethe energy density."""
    if rho / c > 0.02:
        raise ValueError("yg_cross_check needs rho/c <= 0.02")
    v = potentials.delta(c)
    a_e = scattering.solve_scalar_scattering(v, R, "even").a
    a_o = scattering.solve_scalar_scattering(v, R, "odd").a
    eps = spin_chain.thermodynamic_energy_per_site(0.5)
    # per-volume: take L = 1, N = rho
    rep = theorem1_energy(rho, 1.0, a_e, a_o, eps, R0=v.R0)
    sol = bethe.solve_yang_gaudin(rho, c, grids)
    diff = abs(rep.total_first_order - sol.e_density)
    allowed = CALIBRATED_BAND * (rho / c) ** 2 * (math.pi ** 2 / 3) * rho ** 3
    return YGCrossCheck(rho, c, a_e, a_o, eps, rep.total_first_order, sol.e_density, diff, allowed,
                        diff <= allowed, sol.m_density)
