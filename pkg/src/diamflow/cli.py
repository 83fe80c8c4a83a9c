"""Command line interface.

Machine-readable output (CSV, configuration files, single-line JSON) goes to
stdout; diagnostics go to stderr. Exit codes: 0 success, 1 usage error,
2 numerical or solver failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import kernels
from .constructions import push_construction, regular_ngon
from .errors import (DegenerateConfigurationError, NonLipschitzProfileError, ProfileError,
                     SolverError, TaylorDomainError)
from .experiments import (SweepAborted, extrapolate, read_csv, run_sweep,
                          taylor_audit, sweep_point, write_csv)
from .geometry import diameter, log_discriminant, read_configuration, write_configuration
from .profiles import Profile
from .quadrature import integral_I, limit_constant
from .solvers import c_max

log = logging.getLogger("diamflow")

EXIT_USAGE = 1
EXIT_NUMERIC = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _even_n(text: str) -> int:
    n = int(text)
    if n < 4 or n % 2:
        raise argparse.ArgumentTypeError(f"n must be an even integer >= 4, got {n}")
    return n


def _c_value(text: str):
    if text == "max":
        return "max"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--c must be 'max' or a number, got {text!r}")


def _n_list(text: str) -> list[int]:
    try:
        return [_even_n(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":"), allow_nan=True) + "\n")


def _cplx(z: complex) -> list[float]:
    return [z.real, z.imag]


def _write_config(cfg, out) -> None:
    if out:
        write_configuration(cfg, out)
        log.info("wrote %d points to %s", cfg.n, out)
    else:
        write_configuration(cfg, sys.stdout)


def cmd_ngon(args):
    if args.n < 2:
        raise UsageError("n must be >= 2")
    _write_config(regular_ngon(args.n), args.out)


def cmd_construct(args):
    profile = Profile.parse(args.profile)
    if args.c == "max":
        report = c_max(args.n, profile)
        c = report.c_max
        log.info("c_max(%d) = %.15g", args.n, c)
    else:
        c = args.c
    _write_config(push_construction(args.n, c, profile), args.out)


def cmd_delta(args):
    cfg = read_configuration(args.input)
    ld = log_discriminant(cfg)
    _emit({"n": cfg.n, "log_delta": ld, "log_ratio": ld - cfg.n * math.log(cfg.n)})


def cmd_diameter(args):
    cfg = read_configuration(args.input)
    _emit({"n": cfg.n, "diameter": diameter(cfg)})


def cmd_cmax(args):
    _emit(c_max(args.n, Profile.parse(args.profile), args.tol).to_dict())


def cmd_integral(args):
    profile = Profile.parse(args.profile)
    res = integral_I(profile, args.grid)
    _emit({"profile": profile.label, "grid": res.grid_size, "re": res.value.real,
           "im": res.value.imag, "refinement_gap": res.refinement_gap,
           "C": limit_constant(res.value.real)})


def cmd_sweep(args):
    profile = Profile.parse(args.profile)
    try:
        records = run_sweep(args.n_list, profile, args.c, timing=args.timing,
                            workers=args.workers)
    except SweepAborted as exc:
        write_csv(exc.records, args.out, partial=str(exc))
        raise
    write_csv(records, args.out)
    for r in records:
        log.info("n=%d c=%.12g log_ratio=%.12g", r.n, r.c, r.log_ratio)


def cmd_extrapolate(args):
    records = read_csv(args.input)
    fit = extrapolate(records)
    _emit({"intercept": fit.intercept, "slope": fit.slope, "residual": fit.residual,
           "C": math.exp(fit.intercept), "points": len(records)})


def cmd_rho_audit(args):
    profile = Profile.parse(args.profile)
    rec = sweep_point(args.n, profile, args.c)
    audit = taylor_audit(rec)
    s = rec.power_sums
    _emit({"n": rec.n, "profile": rec.profile, "c": rec.c, "t": rec.t,
           "S1": _cplx(s[0]), "S2": _cplx(s[1]), "S3": _cplx(s[2]), "S4": _cplx(s[3]),
           "max_rho": rec.max_rho, "log_ratio": rec.log_ratio,
           "second_order": audit.second_order, "gap": audit.gap,
           "bound": audit.bound, "envelope": rec.envelope, "passed": audit.passed})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diamflow", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ngon", help="regular n-gon of diameter 2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_ngon)

    s = sub.add_parser("construct", help="push construction")
    s.add_argument("--n", type=_even_n, required=True)
    s.add_argument("--profile", default="linear")
    s.add_argument("--c", type=_c_value, default="max")
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("delta", help="log Delta of a configuration file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("diameter", help="diameter of a configuration file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_diameter)

    s = sub.add_parser("cmax", help="largest feasible push strength")
    s.add_argument("--n", type=_even_n, required=True)
    s.add_argument("--profile", default="linear")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_cmax)

    s = sub.add_parser("integral", help="critical integral I and constant C")
    s.add_argument("--profile", default="linear")
    s.add_argument("--grid", type=int, default=512)
    s.set_defaults(func=cmd_integral)

    s = sub.add_parser("sweep", help="sweep n and write CSV")
    s.add_argument("--n-list", type=_n_list, required=True)
    s.add_argument("--profile", default="linear")
    s.add_argument("--c", type=_c_value, default="max")
    s.add_argument("--out", required=True)
    s.add_argument("--timing", action="store_true",
                   help="record wall-clock runtime_ms (makes the CSV non-reproducible)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("extrapolate", help="fit log_ratio ~ a + b/n from a sweep CSV")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_extrapolate)

    s = sub.add_parser("rho-audit", help="power sums of rho and the Taylor audit")
    s.add_argument("--n", type=_even_n, required=True)
    s.add_argument("--profile", default="linear")
    s.add_argument("--c", type=_c_value, default="max")
    s.set_defaults(func=cmd_rho_audit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    log.info("kernel backend: %s", kernels.BACKEND)
    try:
        args.func(args)
    except NonLipschitzProfileError as exc:
        print(f"diamflow {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ProfileError, OSError) as exc:
        print(f"diamflow {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, SweepAborted, DegenerateConfigurationError,
            TaylorDomainError, ValueError) as exc:
        print(f"diamflow {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
