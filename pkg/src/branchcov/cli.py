"""Command line entry point.

    branchcov check     [--config F] [--out P] [--format json|csv]
    branchcov euler     ...
    branchcov theorem   --which t32|t41 ...
    branchcov rgenus    [--order N] ...
    branchcov cech      ...
    branchcov lefschetz ...

Exit status: 0 when every check passes (pending is not a failure), 1 when
any check fails, 2 when the configuration or a precondition is invalid.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import report as rpt
from . import suite
from .config import ConfigError, load
from .equivariant import EquivariantError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML experiment configuration")
    common.add_argument("--order", type=int, help="R-series order (overrides series_order)")
    common.add_argument("--tol", type=float, help="quadrature tolerance (overrides quadrature.tol)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="branchcov", description="Branched-covering invariant checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="run the full invariant suite")
    sub.add_parser("euler", parents=[common], help="Euler characteristics and sequence residuals")
    th = sub.add_parser("theorem", parents=[common], help="term ledger of a comparison formula")
    th.add_argument("--which", choices=("t32", "t41"), required=True)
    sub.add_parser("rgenus", parents=[common], help="R-genus coefficient table")
    sub.add_parser("cech", parents=[common], help="explicit cohomology checks over P^1")
    sub.add_parser("lefschetz", parents=[common], help="equivariant Euler characteristics")
    return p


def _summary(report: rpt.RunReport) -> str:
    lines = [f"{r.id}: {r.status}" for r in report.records]
    failed = report.failed()
    lines.append("FAILED: " + ", ".join(failed) if failed else "all checks passed or pending")
    return "\n".join(lines) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = load(args.config)
        overrides = {}
        if args.order is not None:
            overrides["series_order"] = args.order
        if args.tol is not None:
            overrides["tol"] = args.tol
        if args.out is not None:
            overrides["output"] = args.out
        if overrides:
            cfg = cfg.replace(**overrides)
    except ConfigError as e:
        for field, msg in sorted(e.errors.items()):
            print(f"config error: {field}: {msg}", file=sys.stderr)
        return EXIT_CONFIG

    table = None
    try:
        if args.command == "check":
            report = suite.run_check_suite(cfg)
        elif args.command == "euler":
            report = suite.euler_report(cfg)
        elif args.command == "theorem":
            report = suite.compute_theorem(cfg, args.which)
        elif args.command == "rgenus":
            report, table = suite.rgenus_report(cfg)
        elif args.command == "cech":
            report = suite.cech_report(cfg)
        else:
            report = suite.lefschetz_report(cfg)
    except (suite.PreconditionError, EquivariantError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_CONFIG

    text = rpt.emit(report, args.format, cfg.output, table)
    if cfg.output:
        sys.stdout.write(_summary(report))
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
