"""Command-line front end.

Exit codes: 0 when everything passed, 1 when a check failed, 2 on usage
errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Sequence

from . import parametric as par
from . import series as ser
from ._special import arccos_half
from .checks import CheckReport
from .errors import FeynmanVerifyError
from .quadrature import MAX_REFINEMENT_LEVEL, QuadConfig
from .suite import run_verify_suite

TOL_ENV = "FEYNMAN_VERIFY_TOL"
DEFAULT_TOL = 1e-10

EXIT_OK = 0
EXIT_FAILED = 1


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _json_number(value: float):
    return value if math.isfinite(value) else None


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {text!r}")
    return value


def _tol_for(text: str) -> tuple[str, float]:
    name, sep, value = text.rpartition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=FLOAT, got {text!r}")
    return name, _positive_float(value)


def _default_tol(parser: argparse.ArgumentParser) -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return _positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        parser.error(f"{TOL_ENV}: {exc}")


def _config(args) -> QuadConfig:
    return QuadConfig(abs_tol=args.tol, max_refinement_level=args.max_level)


def report_to_text(report: CheckReport) -> str:
    header = ("check", "expected", "actual", "abs_error", "tolerance", "status")
    rows = [
        (r.name, _fmt(r.expected), _fmt(r.actual), _fmt(r.abs_error), _fmt(r.tolerance),
         "PASS" if r.passed else "FAIL")
        for r in report.results
    ]
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in [header, *rows]]
    lines.append(
        f"{report.total} checks, {report.failures} failed, "
        f"{report.wall_time_seconds:.3f} s"
    )
    return "\n".join(lines)


def report_to_json(report: CheckReport) -> str:
    data = report.to_dict()
    for r in data["results"]:
        for key in ("expected", "actual", "abs_error", "tolerance"):
            r[key] = _json_number(r[key])
    return json.dumps(data, indent=2, allow_nan=False)


def cmd_verify(args, parser) -> int:
    overrides = dict(args.tol_for or [])
    try:
        report = run_verify_suite(_config(args), overrides, jobs=args.jobs)
    except KeyError as exc:
        parser.error(exc.args[0])
    print(report_to_json(report) if args.format == "json" else report_to_text(report))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_eval(args, parser) -> int:
    if not -2.0 <= args.alpha <= 2.0:
        parser.error(f"--alpha must lie in [-2, 2], got {args.alpha!r}")
    try:
        direct = par.I_direct(args.alpha, _config(args)).value
    except FeynmanVerifyError as exc:
        print(f"I_direct failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    closed = par.I_closed(args.alpha)
    record = {"alpha": args.alpha, "I_direct": direct, "I_closed": closed,
              "abs_gap": abs(direct - closed)}
    if args.format == "json":
        print(json.dumps(record))
    else:
        for key, value in record.items():
            print(f"{key:<9} {_fmt(value)}")
    return EXIT_OK


SCAN_COLUMNS = ("alpha", "I_direct", "I_closed", "dIdalpha_closed", "c_est")
DIVERGENT = "divergent"


def scan_rows(start: float, stop: float, steps: int, config: QuadConfig) -> list[tuple]:
    rows = []
    for alpha in par.uniform_grid(start, stop, steps):
        direct = par.I_direct(alpha, config).value
        theta = arccos_half(alpha)
        slope = DIVERGENT if alpha == -2.0 else par.dIdalpha_closed(alpha)
        rows.append((alpha, direct, par.I_closed(alpha), slope, direct + 0.5 * theta * theta))
    return rows


def cmd_scan(args, parser) -> int:
    if not -2.0 <= args.from_ < args.to <= 2.0:
        parser.error("need -2 <= --from < --to <= 2")
    if args.steps < 2:
        parser.error("--steps must be >= 2")
    try:
        rows = scan_rows(args.from_, args.to, args.steps, _config(args))
    except FeynmanVerifyError as exc:
        print(f"scan failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(SCAN_COLUMNS)
        writer.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
    else:
        cells = [SCAN_COLUMNS] + [
            tuple(_fmt(v) if isinstance(v, float) else v for v in row) for row in rows
        ]
        widths = [max(len(r[i]) for r in cells) for i in range(len(SCAN_COLUMNS))]
        for r in cells:
            print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return EXIT_OK


def cmd_series(args, parser) -> int:
    if args.n < 1:
        parser.error("--n must be >= 1")
    if args.accel_order is not None and args.n < 10:
        parser.error("--accel-order needs --n >= 10")
    state = ser.zeta2_partial(args.n)
    tail = par.BASEL - state.partial_sum
    print(f"N            {args.n}")
    print(f"partial_sum  {_fmt(state.partial_sum)}")
    print(f"tail         {_fmt(tail)}  in ({_fmt(state.tail_low)}, {_fmt(state.tail_high)})")
    if args.accel_order is not None:
        value = ser.zeta2_accelerated(args.n, args.accel_order)
        print(f"accelerated  {_fmt(value)}  (order {args.accel_order})")
        print(f"error        {abs(value - par.BASEL):.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feynman-verify",
        description="Numerical checks of the parametric-integral proof that sum 1/n^2 = pi^2/6.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    quad = argparse.ArgumentParser(add_help=False)
    quad.add_argument("--tol", type=_positive_float, default=None,
                      help=f"quadrature absolute tolerance (default {DEFAULT_TOL:g}, or ${TOL_ENV})")
    quad.add_argument("--max-level", type=int, default=MAX_REFINEMENT_LEVEL,
                      choices=range(1, MAX_REFINEMENT_LEVEL + 1), metavar="LEVEL",
                      help="quadrature refinement budget, 1..15")

    p = sub.add_parser("verify", parents=[quad], help="run the full verification suite")
    p.add_argument("--tol-for", type=_tol_for, action="append", metavar="NAME=FLOAT",
                   help="override one check's tolerance (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("eval", parents=[quad], help="evaluate I(alpha) both ways")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("scan", parents=[quad], help="tabulate I(alpha) over a grid")
    p.add_argument("--from", dest="from_", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("series", help="partial sums of zeta(2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--accel-order", type=int, choices=(1, 2, 3))
    p.set_defaults(handler=cmd_series)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", "absent") is None:
        args.tol = _default_tol(parser)
    return args.handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
