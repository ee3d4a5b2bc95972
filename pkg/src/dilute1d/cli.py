"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 solver non-convergence,
4 failed assertion (verify, bound checks).
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import logging
import os
import sys

import numpy as np

from . import __version__, bethe, expansion, free_fermi, io, scattering, spin_chain, verify
from .lanczos import LanczosConvergenceError
from .potentials import MatrixPotential, ScalarPotential

EXIT_OK, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_ASSERTION = 0, 2, 3, 4
PROFILE_ENV = "DILUTE1D_TOL_PROFILE"

log = logging.getLogger("dilute1d")


class AssertionFailure(Exception):
    pass


def _tol_pairs(items):
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise io.ConfigError(f"--tol expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise io.ConfigError(f"--tol value for {key!r} is not a number") from exc
    return out


def _emit(args, payload=None, rows=None, header=None):
    """Write JSON (payload) or CSV (header + rows) to --output or stdout."""
    if args.format == "csv":
        if rows is None:
            raise io.ConfigError(f"command {args.command!r} has no CSV output")
        buf = _stdio.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format(x, ".17g") if isinstance(x, float) else x for x in r])
        text = buf.getvalue()
    else:
        text = io.dumps(payload)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar_result(res: scattering.ScatteringScalarResult, tabulate: int):
    out = {"parity": res.parity, "a": res.a, "R": res.R, "energy": res.energy,
           "quadratic_energy": res.quadratic_energy, "infinite": res.infinite}
    if tabulate:
        xs = np.linspace(-res.R, res.R, tabulate)
        out["table"] = {"x": xs, "psi": res(xs)}
    return out


def cmd_scatter(args):
    pot = io.parse_potential(args.input)
    if not isinstance(pot, ScalarPotential):
        raise io.ConfigError("scatter expects a scalar potential; use scatter-matrix")
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    results = {p: _scalar_result(scattering.solve_scalar_scattering(pot, args.R, p, resolution=args.resolution),
                                 args.tabulate) for p in parities}
    payload = {"schema": io.SCHEMA, "command": "scatter", "R0": pot.R0}
    if len(parities) == 1:
        payload.update(results[parities[0]])
    else:
        payload["even"], payload["odd"] = results["even"], results["odd"]
    _emit(args, payload)


def cmd_scatter_matrix(args):
    pot = io.parse_potential(args.input)
    if isinstance(pot, ScalarPotential):
        pot = MatrixPotential.from_scalar(pot, args.J)
    res = scattering.solve_matrix_scattering(pot, args.R, args.bc, resolution=args.resolution,
                                             check_radius=args.check_radius or None)
    payload = {"schema": io.SCHEMA, "command": "scatter-matrix", "R": res.R, "R0": pot.R0, "bc_mode": res.bc_mode,
               "A": res.A, "eigenvalues": res.eigenvalues, "infinite_projector": res.infinite_projector,
               "finite": res.finite, "norm": res.norm(), "diagnostics": res.diagnostics}
    if np.iscomplexobj(res.A):
        payload["A"] = res.A.real
        payload["A_imag"] = res.A.imag
    _emit(args, payload)


def cmd_chain(args):
    if args.input:
        specs = [io.parse_chain(args.input)]
    else:
        if args.J is None or not args.N:
            raise io.ConfigError("chain needs --J and --N (or --input)")
        specs = []
        for N in args.N:
            doc = {"J": args.J, "N": N, "bc": args.bc, "solver": args.solver, "max_iter": args.max_iter,
                   "tol": args.lanczos_tol, "seed": args.seed, "coupling": {"kind": args.coupling}}
            if args.coupling == "llh":
                doc["coupling"].update(c=args.c, c_prime=args.c_prime)
            specs.append(io.parse_chain(doc))
    rows = []
    for spec in specs:
        res = spin_chain.ground_energy_per_site(spec)
        row = {"J": spec.J, "N": spec.N, "bc": spec.bc, "coupling": spec.coupling.kind, "epsilon": res.epsilon,
               "residual": res.residual, "iterations": res.iterations, "solver": res.solver}
        if spec.coupling.kind == "LaiSutherland":
            e_inf = spin_chain.thermodynamic_energy_per_site(spec.J)
            row.update(e_inf=e_inf, lower=e_inf - 1 / spec.N, upper=e_inf + 1 / spec.N,
                       in_sandwich=bool(e_inf - 1 / spec.N <= res.epsilon <= e_inf + 1 / spec.N))
        elif spec.coupling.kind == "LLH":
            row["closed_form"] = spin_chain.llh_thermodynamic(spec.coupling.params["c"], spec.coupling.params["c_prime"])
        rows.append(row)
    keys = ["J", "N", "bc", "epsilon", "residual", "iterations", "solver"]
    _emit(args, {"schema": io.SCHEMA, "command": "chain", "rows": rows},
          rows=[[r[k] for k in keys] for r in rows], header=keys)


def _bethe_inputs(args, model):
    if args.input:
        m, rho, c, grids, tab = io.parse_bethe(args.input)
        if m != model:
            raise io.ConfigError(f"input declares model {m!r} but command is bethe-{model}")
        return rho, c, grids, tab or args.tabulate
    if args.rho is None or args.c is None:
        raise io.ConfigError("need --rho and --c (or --input)")
    try:
        grids = bethe.BetheGrids(n_k=args.n_k, n_lambda=args.n_lambda, B_cut_over_c=args.B_cut_over_c,
                                 panels=args.panels, method=args.method)
    except ValueError as exc:
        raise io.ConfigError(str(exc)) from exc
    return args.rho, args.c, grids, args.tabulate


def cmd_bethe(args):
    model = "ll" if args.command == "bethe-ll" else "yg"
    rho, c, grids, tab = _bethe_inputs(args, model)
    solver = bethe.solve_lieb_liniger if model == "ll" else bethe.solve_yang_gaudin
    sol = solver(rho, c, grids)
    payload = {"schema": io.SCHEMA, "command": args.command, "rho": rho, "c": c, "Q": sol.Q,
               "density": sol.density, "e_density": sol.e_density, "e_per_rho3": sol.e_per_rho3,
               "grids": {"n_k": grids.n_k, "n_lambda": grids.n_lambda, "B_cut_over_c": grids.B_cut_over_c,
                         "panels": grids.panels, "method": grids.method},
               "diagnostics": {"iterations": sol.iterations, "residual": sol.residual,
                               "density_error": abs(sol.density - rho)}}
    if model == "yg":
        payload["m_density"] = sol.m_density
        payload["B_cut"] = sol.B_cut
    if tab:
        payload["f"] = {"k": sol.k, "f": sol.f}
        if model == "yg":
            payload["sigma"] = {"lambda": sol.lam, "sigma": sol.sigma}
    rows = [[float(k), float(f)] for k, f in zip(sol.k, sol.f)]
    _emit(args, payload, rows=rows, header=["k", "f"])


def cmd_freefermi(args):
    try:
        box = free_fermi.FreeFermiBox(args.N, args.L if args.L is not None else float(args.N))
    except ValueError as exc:
        raise io.ConfigError(str(exc)) from exc
    rep = free_fermi.check_density_bounds(box, samples=args.samples, seed=args.seed)
    table = free_fermi.density_table(box, args.points)
    payload = {"schema": io.SCHEMA, "command": "freefermi", "N": box.N, "L": box.L, "rho": box.rho,
               "energy": free_fermi.free_fermi_energy(box.N, box.L),
               "bounds": {"samples": rep.samples, "max_ratio_rho2": rep.max_ratio2, "passed": rep.passed,
                          "fitted_c3": rep.fitted_c3, "fitted_c4": rep.fitted_c4, "note": rep.note},
               "table": {"x": table[:, 0], "rho1": table[:, 1], "rho2_mid": table[:, 2]}}
    _emit(args, payload, rows=table.tolist(), header=["x", "rho1", "rho2_x_Lhalf"])
    if not rep.passed:
        raise AssertionFailure(f"rho2 bound violated (max ratio {rep.max_ratio2:.6g})")


def cmd_expand(args):
    doc = io.parse_expand(args.input) if args.input else {}

    def get(key, default=None):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        return doc.get(key, default)

    N, L = get("N"), get("L")
    if N is None or L is None:
        raise io.ConfigError("expand needs N and L")
    R0 = float(get("R0", 0.0))
    a_e, a_o = get("a_e"), get("a_o")
    if "potential" in doc:
        pot = io.parse_potential(doc["potential"])
        R = float(doc.get("R", max(1.0, 2 * pot.R0)))
        a_e = scattering.solve_scalar_scattering(pot, R, "even").a
        a_o = scattering.solve_scalar_scattering(pot, R, "odd").a
        R0 = pot.R0
    if a_e is None or a_o is None:
        raise io.ConfigError("expand needs a_e and a_o (or a potential)")
    eps = get("eps_spin")
    if eps is None:
        eps = spin_chain.thermodynamic_energy_per_site(float(get("J", 0.5)))
    stats = get("statistics", "fermion")
    Ls = [float(L)] + [float(x) for x in (args.sweep_L or [])]
    reports = []
    for Lv in Ls:
        try:
            reports.append(expansion.theorem1_energy(float(N), Lv, float(a_e), float(a_o), float(eps),
                                                     statistics=stats, R0=R0))
        except ValueError as exc:
            raise io.ConfigError(str(exc)) from exc
    payload = {"schema": io.SCHEMA, "command": "expand", "reports": [r.as_dict() for r in reports]}
    keys = ["N", "L", "rho", "leading", "correction", "total_first_order", "valid"]
    _emit(args, payload, rows=[[getattr(r, k) for k in keys] for r in reports], header=keys)


def cmd_verify(args):
    try:
        tol = verify.tolerances(args.profile, _tol_pairs(args.tol))
    except ValueError as exc:
        raise io.ConfigError(str(exc)) from exc
    results = verify.run_criteria(tol, args.seed)
    text = io.dumps(verify.report_dict(results, args.seed, tol))
    if not args.skip_determinism:
        results.append(verify.c15_determinism(text, tol, args.seed))
    report = verify.report_dict(results, args.seed, tol)
    lines = [r.line() for r in results]
    lines.append(f"{report['passed']}/{report['total']} criteria passed")
    print("\n".join(lines), file=sys.stderr if args.output in (None, "-") and args.json else sys.stdout)
    if args.json or (args.output and args.output != "-"):
        _emit(args, report)
    if report["passed"] != report["total"]:
        raise AssertionFailure(f"{report['total'] - report['passed']} criteria failed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default json)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", action="append", metavar="KEY=VALUE",
                        help="tolerance override, repeatable (see `verify --help` for keys)")
    common.add_argument("--profile", default=os.environ.get(PROFILE_ENV, "default"),
                        help=f"tolerance profile: default, strict or loose (env {PROFILE_ENV})")
    common.add_argument("--log-level", default="WARNING", help="logging level")

    p = argparse.ArgumentParser(prog="dilute1d", description="Scattering lengths, spin chains, Bethe ansatz "
                                "and first-order energies of dilute one-dimensional gases.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scatter", parents=[common], help="even/odd scattering lengths of a scalar potential")
    s.add_argument("--input", "-i", required=True, help="potential JSON")
    s.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    s.add_argument("--R", type=float, default=1.0, help="matching radius, must exceed R0 (default 1)")
    s.add_argument("--resolution", type=int, default=scattering.DEFAULT_RESOLUTION, help="RK4 steps per unit R")
    s.add_argument("--tabulate", type=int, default=0, metavar="N", help="include psi on N points")
    s.set_defaults(func=cmd_scatter)

    s = sub.add_parser("scatter-matrix", parents=[common], help="scattering length matrix of a matrix potential")
    s.add_argument("--input", "-i", required=True, help="potential JSON (scalar potentials need --J)")
    s.add_argument("--J", type=float, default=0.5, help="spin for scalar input (default 1/2)")
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--bc", choices=scattering.BC_MODES, default="fermionic")
    s.add_argument("--resolution", type=int, default=scattering.DEFAULT_RESOLUTION)
    s.add_argument("--check-radius", type=float, default=2.0, help="recompute A at this multiple of R (0 disables)")
    s.set_defaults(func=cmd_scatter_matrix)

    s = sub.add_parser("chain", parents=[common], help="ground energy per site of a pair-coupling chain")
    s.add_argument("--input", "-i", help="chain spec JSON")
    s.add_argument("--J", type=float)
    s.add_argument("--N", type=int, nargs="+", help="one or more chain lengths")
    s.add_argument("--coupling", choices=("ls", "llh"), default="ls")
    s.add_argument("--c", type=float, help="LLH symmetric-spin coupling")
    s.add_argument("--c-prime", type=float, help="LLH antisymmetric-spin coupling")
    s.add_argument("--bc", choices=("periodic", "open"), default="periodic")
    s.add_argument("--solver", choices=("auto", "dense", "lanczos"), default="auto")
    s.add_argument("--max-iter", type=int, default=500)
    s.add_argument("--lanczos-tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_chain)

    for name, help_ in (("bethe-ll", "Lieb-Liniger ground state"), ("bethe-yg", "spin-1/2 Yang-Gaudin ground state")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--input", "-i", help="Bethe spec JSON")
        s.add_argument("--rho", type=float)
        s.add_argument("--c", type=float)
        s.add_argument("--n-k", type=int, default=64)
        s.add_argument("--n-lambda", type=int, default=1024)
        s.add_argument("--B-cut-over-c", type=float, default=20.0)
        s.add_argument("--panels", type=int, default=64)
        s.add_argument("--method", choices=("direct", "fixed_point"), default="direct")
        s.add_argument("--tabulate", action="store_true", help="include root densities")
        s.set_defaults(func=cmd_bethe)

    s = sub.add_parser("freefermi", parents=[common], help="free-Fermi densities (CSV table or JSON report)")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--L", type=float, help="box length (default N)")
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(func=cmd_freefermi)

    s = sub.add_parser("expand", parents=[common], help="first-order dilute energy")
    s.add_argument("--input", "-i", help="expand JSON (may embed a potential)")
    s.add_argument("--N", type=float)
    s.add_argument("--L", type=float)
    s.add_argument("--a-e", dest="a_e", type=float)
    s.add_argument("--a-o", dest="a_o", type=float)
    s.add_argument("--eps-spin", dest="eps_spin", type=float, help="spin-chain energy (default: thermodynamic LS value)")
    s.add_argument("--J", type=float, help="spin for the default eps_spin (default 1/2)")
    s.add_argument("--R0", type=float)
    s.add_argument("--statistics", choices=("fermion", "boson"))
    s.add_argument("--sweep-L", nargs="+", type=float, help="extra box lengths (one report row each)")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", parents=[common], help="run every acceptance criterion",
                       description="Tolerance keys: " + ", ".join(sorted(verify.DEFAULT_TOLERANCES)))
    s.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    s.add_argument("--skip-determinism", action="store_true", help="do not rerun the suite for criterion 15")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command != "verify" and args.tol:
            verify.tolerances(args.profile, _tol_pairs(args.tol))  # validated; only verify consumes them
        args.func(args)
    except (io.ConfigError, MemoryError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (LanczosConvergenceError, bethe.BetheConvergenceError) as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except AssertionFailure as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
