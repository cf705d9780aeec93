"""Command-line interface.

Subcommands expose each computation with machine-readable output:

- ``constant``:  the growth constant by any of its three routes
- ``measure``:   density, distribution, and potential of the
  equilibrium measure on a sample of points
- ``extremal``:  the ratio maximizer for one (n, alpha)
- ``chebyshev``: the monic grid minimizer for one (n, alpha)
- ``sweep``:     grid-size sweeps of either route, or the bounded
  degree regime via --cr
- ``verify``:    the acceptance suites, one pass/fail line per check

Exit codes: 0 success, 2 bad usage or degenerate input, 3 numeric
failure.  JSON output is byte-identical across identical invocations.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from . import asymptotics as asy
from . import equilibrium as eq
from .config import RunConfig, load_config
from .errors import DegenerateProblemError, InvalidArgumentError, NumericFailure
from .grid_poly import make_grid
from .jsonio import csv_lines, dumps, format_float
from .minmax_solver import solve_monic_min
from .ratio_extremal import analyze_structure, solve_ratio_extremal
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _write(text: str, out: str) -> None:
    if out in ("-", ""):
        sys.stdout.write(text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _alpha_in_unit(value: str, allow_zero: bool = False) -> float:
    a = float(value)
    lo_ok = a >= 0.0 if allow_zero else a > 0.0
    if not lo_ok or a >= 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1), got {value}")
    return a


def _parse_n_list(text: str) -> list[int]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise InvalidArgumentError("empty n-list")
    return [int(s) for s in items]


def cmd_constant(args, cfg: RunConfig) -> int:
    # alpha = 1 is rejected: there the ratio itself diverges
    route = args.route
    a = _alpha_in_unit(args.alpha, allow_zero=True)
    if route == "closed":
        _write(format_float(eq.growth_constant(a)), cfg.out)
    elif route == "taylor":
        _write(format_float(eq.growth_constant_series(a, args.terms)), cfg.out)
    elif route == "integral":
        _write(format_float(eq.growth_constant_integral(a)), cfg.out)
    else:
        closed = eq.growth_constant(a)
        payload = {
            "alpha": a,
            "closed": closed,
            "taylor": eq.growth_constant_series(a, args.terms) if a > 0 else 0.0,
            "integral": eq.growth_constant_integral(a) if a > 0 else 0.0,
            "terms": args.terms,
        }
        _write(dumps(payload, indent=2), cfg.out)
    return EXIT_OK


def cmd_measure(args, cfg: RunConfig) -> int:
    a = _alpha_in_unit(args.alpha)
    if args.points < 2:
        raise InvalidArgumentError(f"need at least 2 points, got {args.points}")
    m = eq.equilibrium_measure(a)
    theta = np.linspace(0.0, np.pi, args.points)
    sample = [0.0 if abs(x) < 1e-15 else float(x) for x in np.cos(theta)[::-1]]
    xs = sorted(set(sample) | {-m.r, m.r})
    rows = []
    for x in xs:
        rows.append(
            {
                "x": float(x),
                "density": float(m.density(float(x))),
                "cdf": eq.cdf(m, float(x)),
                "potential": eq.potential(m, float(x)),
            }
        )
    payload = {"alpha": a, "r": m.r, "total_mass": m.total_mass, "rows": rows}
    _write(dumps(payload, indent=2), cfg.out)
    return EXIT_OK


def cmd_extremal(args, cfg: RunConfig) -> int:
    a = _alpha_in_unit(args.alpha)
    sol = solve_ratio_extremal(
        args.n,
        a,
        points_per_gap=cfg.scan_points_per_gap,
        degree=args.degree,
    )
    payload = sol.to_json_dict()
    if args.emit_poly:
        payload["poly"] = sol.poly.to_json_dict()
    if args.structure:
        payload["structure"] = analyze_structure(sol).to_json_dict()
    _write(dumps(payload, indent=2), cfg.out)
    return EXIT_OK


def cmd_chebyshev(args, cfg: RunConfig) -> int:
    a = _alpha_in_unit(args.alpha)
    d = args.degree if args.degree is not None else int(np.floor(a * args.n))
    sol = solve_monic_min(make_grid(args.n), d)
    payload = {"n": args.n, "alpha": a, "degree": d}
    payload.update(sol.to_json_dict())
    _write(dumps(payload, indent=2), cfg.out)
    return EXIT_OK


def cmd_sweep(args, cfg: RunConfig) -> int:
    n_list = _parse_n_list(args.n_list)
    if args.cr is not None:
        rep = asy.sqrt_regime(args.cr, n_list, workers=cfg.workers)
        if cfg.format == "csv":
            _write("\n".join(csv_lines(rep.csv_rows())), cfg.out)
        else:
            _write(dumps(rep.to_json_dict(), indent=2), cfg.out)
        return EXIT_OK
    if args.alpha is None:
        raise InvalidArgumentError("--alpha is required unless --cr is given")
    a = _alpha_in_unit(args.alpha)
    reports = {}
    if args.route in ("ratio", "both"):
        reports["ratio"] = asy.sweep_ratio(a, n_list, workers=cfg.workers)
    if args.route in ("monic", "both"):
        reports["monic"] = asy.sweep_monic(a, n_list, workers=cfg.workers)
    if args.plot_data:
        rep = reports.get("ratio") or reports["monic"]
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write("\n".join(csv_lines(rep.plot_rows())) + "\n")
    if cfg.format == "csv":
        if len(reports) != 1:
            raise InvalidArgumentError("csv output needs a single route, not 'both'")
        rep = next(iter(reports.values()))
        _write("\n".join(csv_lines(rep.csv_rows())), cfg.out)
    else:
        payload = {k: v.to_json_dict() for k, v in reports.items()}
        if len(payload) == 1:
            payload = next(iter(payload.values()))
        _write(dumps(payload, indent=2), cfg.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    results = run_suite(args.suite, cfg)
    all_ok = True
    for res in results:
        sys.stdout.write(res.line() + "\n")
        all_ok = all_ok and res.passed
    sys.stdout.write(
        ("all checks passed" if all_ok else "SUITE FAILED") + f" ({args.suite})\n"
    )
    return EXIT_OK if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file merged under explicit flags")
    common.add_argument(
        "--format", choices=["json", "csv"], help="output format (csv: sweeps only)"
    )
    common.add_argument("--out", help="output path, '-' for stdout (default)")
    common.add_argument(
        "--workers",
        type=int,
        help="worker threads for sweep rows (default from GRID_EXTREMAL_WORKERS or 1)",
    )
    common.add_argument(
        "--scan-density",
        type=int,
        help="probe points per grid gap in the ratio search (default 8)",
    )

    p = argparse.ArgumentParser(
        prog="grid-extremal",
        description="Extremal polynomials on the equispaced n-grid: minimax "
        "solvers, the constrained equilibrium measure, and convergence sweeps.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constant", parents=[common], help="growth constant of the norm ratio")
    c.add_argument("--alpha", required=True, help="degree fraction in (0, 1); 0 allowed for closed route")
    c.add_argument("--route", choices=["closed", "taylor", "integral", "all"], default="closed")
    c.add_argument("--terms", type=int, default=30, help="series terms for the taylor route")

    m = sub.add_parser("measure", parents=[common], help="equilibrium measure table")
    m.add_argument("--alpha", required=True)
    m.add_argument("--points", type=int, required=True)

    e = sub.add_parser("extremal", parents=[common], help="ratio-extremal polynomial")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--alpha", required=True)
    e.add_argument("--degree", type=int, help="explicit degree budget override")
    e.add_argument("--emit-poly", action="store_true", help="include coefficients")
    e.add_argument("--structure", action="store_true", help="include the zero-structure report")

    ch = sub.add_parser("chebyshev", parents=[common], help="monic minimizer of the grid norm")
    ch.add_argument("--n", type=int, required=True)
    ch.add_argument("--alpha", required=True)
    ch.add_argument("--degree", type=int, help="explicit degree override")

    s = sub.add_parser("sweep", parents=[common], help="grid-size sweeps toward the limit")
    s.add_argument("--alpha", help="degree fraction (ignored with --cr)")
    s.add_argument("--n-list", required=True, help="comma-separated grid sizes")
    s.add_argument("--route", choices=["ratio", "monic", "both"], default="ratio")
    s.add_argument("--cr", type=float, help="bounded-degree regime with d = round(cr sqrt(n))")
    s.add_argument("--plot-data", help="also write (1/n, value, target) CSV to this path")

    v = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    return p


def _merge_config(args) -> RunConfig:
    cfg = load_config(args.config)
    if args.format is not None:
        cfg = replace(cfg, format=args.format)
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    if args.workers is not None:
        if args.workers < 1:
            raise InvalidArgumentError("workers must be >= 1")
        cfg = replace(cfg, workers=args.workers)
    if args.scan_density is not None:
        if args.scan_density < 2:
            raise InvalidArgumentError("scan density must be >= 2")
        cfg = replace(cfg, scan_points_per_gap=args.scan_density)
    return cfg


_COMMANDS = {
    "constant": cmd_constant,
    "measure": cmd_measure,
    "extremal": cmd_extremal,
    "chebyshev": cmd_chebyshev,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](args, cfg)
    except (InvalidArgumentError, DegenerateProblemError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NumericFailure as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
