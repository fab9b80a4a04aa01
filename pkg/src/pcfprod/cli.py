"""Command-line interface: ``eval``, ``crosscheck``, ``special``, ``green``, ``bench``.

Exit codes: 0 pass, 1 domain error, 2 tolerance not met or a failed
check, 64 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import harness
from .config import load_config, parse_complex
from .errors import DomainError, PCFError, ToleranceNotMet

EXIT_OK, EXIT_DOMAIN, EXIT_TOLERANCE, EXIT_USAGE = 0, 1, 2, 64


class UsageParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params_arg(text):
    try:
        omega, delta = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected OMEGA,DELTA, got {text!r}") from None
    return omega, delta


def _common():
    # SUPPRESS keeps a flag given before the subcommand from being reset by
    # the subparser's own default
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS, help="JSON config file")
    p.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS, help="write the report here")
    p.add_argument("--threshold", type=float, default=argparse.SUPPRESS, help="pass/fail threshold")
    p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS, help="stdout format")
    p.add_argument("--rel-tol", type=float, default=argparse.SUPPRESS, help="quadrature relative tolerance")
    p.add_argument("--scheme", choices=("auto", "gauss_kronrod", "double_exponential"),
                   default=argparse.SUPPRESS, help="quadrature backend")
    p.add_argument("--max-terms", type=int, default=argparse.SUPPRESS, help="series terms")
    p.add_argument("--tail-strategy", choices=("none", "semiclassical_tail", "averaging_acceleration", "both"),
                   default=argparse.SUPPRESS, help="series remainder handling")
    return p


def build_parser():
    common = _common()
    parser = UsageParser(prog="pcfprod", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=UsageParser)
    methods = sorted(harness.METHODS)

    p = sub.add_parser("eval", parents=[common], help="evaluate one method at one point")
    p.add_argument("--z", type=_complex_arg, required=True, help="RE[+IMi]")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=methods, required=True)

    for name, help_text in (("crosscheck", "compare methods over a grid"), ("bench", "time methods")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--z", type=_complex_arg, action="append", help="repeatable; overrides the grid")
        p.add_argument("--x", type=float, action="append", help="repeatable; overrides the grid")
        p.add_argument("--method", choices=methods, action="append", help="repeatable")
        if name == "bench":
            p.add_argument("--repetitions", type=int, default=3)

    p = sub.add_parser("special", parents=[common], help="run an identity suite")
    p.add_argument("case", choices=sorted(harness.SPECIAL_CASES + tuple(harness.SPECIAL_ALIASES)))
    p.add_argument("--z", type=_complex_arg, action="append", help="z values for beta_x_zero")

    p = sub.add_parser("green", parents=[common], help="Landau-Green equivalence checks")
    p.add_argument("--params", type=_params_arg, action="append", metavar="OMEGA,DELTA")
    p.add_argument("--x", type=float, action="append")
    return parser


def _config(args):
    cfg = load_config(getattr(args, "config", None))
    q, s = {}, {}
    if hasattr(args, "rel_tol"):
        q["rel_tol"] = args.rel_tol
    if hasattr(args, "scheme"):
        q["scheme"] = args.scheme
    if hasattr(args, "max_terms"):
        s["max_terms"] = args.max_terms
    if hasattr(args, "tail_strategy"):
        s["tail_strategy"] = args.tail_strategy
    updates = {}
    if q:
        updates["quadrature"] = dataclasses.replace(cfg.quadrature, **q)
    if s:
        updates["series"] = dataclasses.replace(cfg.series, **s)
    if getattr(args, "z", None) and args.command != "eval":
        updates["z_values"] = tuple(args.z)
    if getattr(args, "x", None) and args.command in ("crosscheck", "bench"):
        updates["x_values"] = tuple(args.x)
    if getattr(args, "method", None) and args.command != "eval":
        updates["methods"] = tuple(args.method)
    if hasattr(args, "threshold"):
        updates["threshold"] = args.threshold
    return dataclasses.replace(cfg, **updates)


def _dump(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _emit(args, json_obj=None, csv_text=None):
    fmt = getattr(args, "format", "json")
    text = csv_text if fmt == "csv" and csv_text is not None else _dump(json_obj)
    sys.stdout.write(text)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)


def cmd_eval(args, cfg):
    try:
        res, ns = harness.evaluate(args.method, args.z, args.x, cfg)
    except ToleranceNotMet as exc:
        r = exc.result
        payload = {"method": args.method, "error": str(exc)}
        if r is not None:
            payload.update(value=[r.value.real, r.value.imag], err_estimate=r.err_estimate, work=r.work)
        _emit(args, payload)
        return EXIT_TOLERANCE
    _emit(args, {"method": args.method, "z": [args.z.real, args.z.imag], "x": args.x,
                 "value": [res.value.real, res.value.imag], "err_estimate": res.err_estimate,
                 "work": res.work, "wall_ns": ns})
    return EXIT_OK


def cmd_crosscheck(args, cfg, parser):
    if not harness.comparable(cfg.methods):
        parser.error("crosscheck needs at least two methods with the same target")
    report = harness.crosscheck(cfg)
    csv_text = harness.crosscheck_csv(report)
    fmt = getattr(args, "format", "json")
    sys.stdout.write(csv_text if fmt == "csv" else _dump(report))
    out = getattr(args, "out", None)
    if out:
        out = Path(out)
        out.with_suffix(".json").write_text(_dump(report))
        out.with_suffix(".csv").write_text(csv_text)
    print(f"max relative deviation {harness.max_deviation(report):.3e} "
          f"(threshold {report['config_echo']['threshold']:g})", file=sys.stderr)
    return EXIT_OK if report["pass"] else EXIT_TOLERANCE


def cmd_special(args, cfg):
    report = harness.special(args.case, cfg)
    rows = report["points"]
    keys = list(dict.fromkeys(k for r in rows for k in r))
    _emit(args, report, harness.rows_csv([{k: r.get(k) for k in keys} for r in rows], keys))
    return EXIT_OK if report["pass"] else EXIT_TOLERANCE


def cmd_green(args, cfg):
    report = harness.green(cfg, args.params or harness.DEFAULT_GREEN_PARAMS, args.x or harness.DEFAULT_GREEN_X)
    _emit(args, report)
    return EXIT_OK if report["pass"] else EXIT_TOLERANCE


def cmd_bench(args, cfg, parser):
    if args.repetitions < 3:
        parser.error("--repetitions must be >= 3")
    rows = harness.bench(cfg, args.repetitions)
    text = harness.rows_csv(rows, harness.BENCH_COLUMNS)
    if getattr(args, "format", "csv") == "json":
        text = _dump(rows)
    sys.stdout.write(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except (ValueError, OSError) as exc:
        parser.error(f"configuration: {exc}")
    unknown = [m for m in cfg.methods if m not in harness.METHODS]
    if unknown:
        parser.error(f"configuration: unknown methods {unknown}")
    try:
        if args.command == "eval":
            return cmd_eval(args, cfg)
        if args.command == "crosscheck":
            return cmd_crosscheck(args, cfg, parser)
        if args.command == "special":
            return cmd_special(args, cfg)
        if args.command == "green":
            return cmd_green(args, cfg)
        return cmd_bench(args, cfg, parser)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ToleranceNotMet as exc:
        print(f"tolerance not met: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except PCFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
