"""Command-line interface.

Usage::

    frontflux alpha --n 1 --k 0 --order 5 --convention pointwise --oracle
    frontflux tables --table 4 --format csv
    frontflux profile --n 1 --k 1 --source exact --samples 1000
    frontflux validate --n 1 --k 0 --level ode

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .alpha import solve_alpha
from .errors import FrontfluxError, ParameterError
from .profiles import ProfileSource, sample_profile
from .series import build_series
from .shooting import ShootConfig, integrate_from_front, shoot_alpha
from .similarity import (
    FluxConvention,
    PhysicalParams,
    cauchy_quadratic_profile,
    exact_alpha_m1,
    exact_profile_m1,
    k_from_m,
)
from .tables import discrepancy_report, reproduce_table, rows_to_csv
from .validation import validate_ode, validate_pde

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class Outputs:
    """Collects emitted files and writes one manifest per command."""

    def __init__(self, command, args):
        self.command = command
        self.out = Path(args.out) if getattr(args, "out", None) else None
        self.params = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
        self.files = []
        self.started = time.perf_counter()

    def write(self, name, text):
        if self.out is None:
            return
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        path.write_text(text)
        self.files.append(str(path))

    def finish(self, tolerances=None, convention=None, status=EXIT_OK):
        if self.out is None:
            return
        manifest = {
            "command": self.command,
            "parameters": self.params,
            "version": __version__,
            "tolerances": tolerances or {},
            "convention": convention,
            "exit_status": status,
            "timing_seconds": time.perf_counter() - self.started,
            "outputs": self.files,
        }
        self.out.mkdir(parents=True, exist_ok=True)
        (self.out / f"{self.command}_manifest.json").write_text(_dump(manifest))


def _phys(args) -> PhysicalParams:
    if args.n is None:
        raise UsageError("--n is required")
    if args.k is None and args.m is None:
        raise UsageError("one of --k or --m is required")
    k = args.k if args.k is not None else k_from_m(args.n, args.m)
    return PhysicalParams(args.n, k, args.kappa, args.q0)


def _convention(args) -> FluxConvention:
    return FluxConvention.parse(args.convention)


def cmd_alpha(args) -> int:
    phys = _phys(args)
    conv = _convention(args)
    outputs = Outputs("alpha", args)
    report = solve_alpha(phys.n, phys.m, args.order, conv, args.tol)
    record = {"n": phys.n, "k": phys.k, "m": phys.m, "series": report.to_record()}
    print(f"alpha      = {report.alpha:.10f}")
    print(f"residual   = {report.residual_at_root:.3e}")
    print(f"bracket    = [{report.bracket[0]:.6g}, {report.bracket[1]:.6g}]")
    print(f"convention = {conv.value}, order = {args.order}")
    if args.oracle:
        alpha_star, _, shot = shoot_alpha(phys.n, phys.m, ShootConfig(convention=conv))
        record["oracle"] = shot.to_record()
        record["oracle_deviation"] = report.alpha - alpha_star
        print(f"oracle     = {alpha_star:.10f} (deviation {report.alpha - alpha_star:+.3e})")
    if args.json:
        sys.stdout.write(_dump(record))
    outputs.write("alpha.json", _dump(record))
    outputs.finish({"tol": args.tol}, conv.value)
    return EXIT_OK


def cmd_tables(args) -> int:
    outputs = Outputs(f"tables{args.table}", args)
    status = EXIT_OK
    try:
        rows = reproduce_table(args.table, oracle=not args.no_oracle)
    except FrontfluxError as exc:
        print(f"error: table {args.table}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    discrepancy = discrepancy_report() if args.table in (2, 4) else None
    if args.format == "json":
        payload = {"table": args.table, "rows": rows}
        if discrepancy is not None:
            payload["discrepancy"] = discrepancy
        text = _dump(payload)
        sys.stdout.write(text)
        outputs.write(f"table{args.table}.json", text)
    else:
        text = rows_to_csv(rows)
        sys.stdout.write(text)
        outputs.write(f"table{args.table}.csv", text)
        if discrepancy is not None:
            flat = {k: v for k, v in discrepancy.items() if not isinstance(v, dict)}
            dtext = rows_to_csv([flat], tuple(flat))
            sys.stdout.write("\n" + dtext)
            outputs.write(f"table{args.table}_discrepancy.csv", dtext)
    outputs.finish(status=status)
    return status


def _profile_alpha(args, phys, conv):
    if args.alpha is not None:
        return args.alpha
    if args.source == "shooting":
        return shoot_alpha(phys.n, phys.m, ShootConfig(convention=conv))[0]
    if args.source == "exact":
        if abs(phys.m - 1.0) < 1e-14:
            return exact_alpha_m1(phys.n, conv)
        raise UsageError("the Cauchy branch has zero origin flux; pass --alpha")
    return solve_alpha(phys.n, phys.m, args.order, conv).alpha


def cmd_profile(args) -> int:
    phys = _phys(args)
    conv = _convention(args)
    n, m = phys.n, phys.m
    if args.source == "exact" and not (
        abs(m - 1.0) < 1e-14 or abs(n * m + n + 2.0 * m) < 1e-14
    ):
        raise UsageError("--source exact needs m = 1 or n m + n + 2 m = 0")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    outputs = Outputs("profile", args)
    alpha = _profile_alpha(args, phys, conv)
    if args.source == "series":
        profile = sample_profile(build_series(n, m, alpha, args.order), alpha, args.samples)
    elif args.source == "exact":
        curve = exact_profile_m1(n, alpha) if abs(m - 1.0) < 1e-14 else cauchy_quadratic_profile(n, alpha)
        profile = sample_profile(curve, alpha, args.samples, ProfileSource.EXACT)
    else:
        if args.samples < 200:
            raise UsageError("--source shooting needs --samples >= 200")
        profile = integrate_from_front(n, m, alpha, ShootConfig(convention=conv, samples=args.samples))
    text = profile.to_csv()
    sys.stdout.write(text)
    outputs.write("profile.csv", text)
    outputs.finish(convention=conv.value)
    return EXIT_OK


def cmd_validate(args) -> int:
    phys = _phys(args)
    conv = _convention(args)
    outputs = Outputs("validate", args)
    checks = []
    if args.level in ("ode", "all"):
        checks += validate_ode(phys, args.order, conv, args.tolerance)
    if args.level in ("pde", "all"):
        checks += validate_pde(phys, nr=args.nr)
    ok = all(c.passed for c in checks)
    for c in checks:
        mark = "PASS" if c.passed else "FAIL"
        print(f"{mark} {c.name}: {c.value:.3e} (threshold {c.threshold:.1e})")
    text = _dump({"n": phys.n, "k": phys.k, "m": phys.m, "checks": [c.to_record() for c in checks]})
    outputs.write("validate.json", text)
    status = EXIT_OK if ok else EXIT_FAIL
    outputs.finish({c.name: c.threshold for c in checks}, conv.value, status)
    return status


def _add_case_flags(p, order=5):
    p.add_argument("--n", type=float, required=True, help="conductivity exponent")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=float, help="flux growth exponent")
    g.add_argument("--m", type=float, help="similarity exponent m (converted to k)")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--q0", type=float, default=1.0)
    p.add_argument("--order", type=int, default=order, help="series truncation order")
    p.add_argument(
        "--convention",
        choices=[c.value for c in FluxConvention],
        default=FluxConvention.POINTWISE.value,
    )
    p.add_argument("--out", help="directory for data files and the run manifest")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontflux",
        description="Self-similar front solutions of the nonlinear heat equation with prescribed flux.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="front position from the series")
    _add_case_flags(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--oracle", action="store_true", help="also run the shooting oracle")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("tables", help="reproduce a published table")
    p.add_argument("--table", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--no-oracle", action="store_true", help="skip the shooting oracle columns")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("profile", help="sampled (theta, f, df) curve as CSV")
    _add_case_flags(p)
    p.add_argument("--source", choices=["series", "shooting", "exact"], default="series")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--alpha", type=float, help="front position override")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("validate", help="cross-oracle validation")
    _add_case_flags(p)
    p.add_argument("--level", choices=["ode", "pde", "all"], default="ode")
    p.add_argument("--tolerance", type=float, default=1e-2, help="ODE profile threshold")
    p.add_argument("--nr", type=int, default=800, help="PDE grid cells")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FrontfluxError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
