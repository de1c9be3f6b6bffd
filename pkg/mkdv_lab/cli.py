"""
Interface en ligne de commande: mkdv-lab run | sweep | verify.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from tabulate import tabulate

from .config import load_scenario, load_settings_from_env
from .exceptions import AcceptanceError, ConfigurationError, LabError
from .harness import format_checks, run, run_identity_suite, sweep
from .harness.sweep import TABLE_COLUMNS, SweepAxis
from .utils.logger import run_logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _add_scenario_flags(parser: argparse.ArgumentParser):
    parser.add_argument("scenario", help="Scenario JSON file")
    parser.add_argument("--points", type=int, default=None, help="Grid points (power of two)")
    parser.add_argument("--length", type=float, default=None, help="Box length")
    parser.add_argument("--dt", type=float, default=None, help="Time step")
    parser.add_argument("--seed", type=int, default=None, help="Perturbation seed")
    parser.add_argument("--out", default=None, help="Output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mkdv-lab",
        description="Numerical laboratory for sums of mKdV solitons and breathers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="Run one scenario and write its report")
    _add_scenario_flags(run_parser)

    sweep_parser = sub.add_parser("sweep", help="Run a scenario over a list of values")
    _add_scenario_flags(sweep_parser)
    sweep_parser.add_argument("--axis", required=True, choices=[a.value for a in SweepAxis])
    sweep_parser.add_argument("--values", required=True, help="Comma-separated sorted values")

    sub.add_parser("verify", help="Run the exact-solution identity suite")
    return parser


def _configure_logging(log_dir: Optional[str]) -> logging.Logger:
    return run_logger(log_dir, load_settings_from_env().get("log_level", "INFO"))


def _overrides(args: argparse.Namespace) -> dict:
    out = args.out or load_settings_from_env().get("output_dir")
    return {"points": args.points, "length": args.length, "dt": args.dt,
            "seed": args.seed, "out": out}


def _parse_values(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigurationError(f"Invalid --values '{text}': {e}") from e


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario, _overrides(args))
    out = os.path.join(scenario.outputs, scenario.name)
    logger = _configure_logging(out)
    report = run(scenario, output_dir=out)
    rows = [[name, f"{c['value']:.3e}", f"{c['threshold']:.1e}", "PASS" if c["passed"] else "FAIL"]
            for name, c in report.checks.items()]
    print(tabulate(rows, headers=["check", "value", "threshold", "pass"], tablefmt="github"))
    for error in report.errors:
        logger.error(f"{error['stage']}: {error['type']} {error['message']}")
    if not report.passed:
        failed = [name for name, c in report.checks.items() if not c["passed"]]
        raise AcceptanceError(f"Run '{scenario.name}' failed checks {failed} with {len(report.errors)} errors")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    values = _parse_values(args.values)
    scenario = load_scenario(args.scenario, _overrides(args))
    out = os.path.join(scenario.outputs, f"{scenario.name}_sweep_{args.axis}")
    _configure_logging(out)
    result = sweep(scenario, args.axis, values, output_dir=out)
    print(tabulate(result.table(), headers=TABLE_COLUMNS, tablefmt="github"))
    if result.slope is not None:
        print(f"slope ({result.slope_kind}): {result.slope:.4f}")
    failed = [row["value"] for row in result.rows if row["error"] is not None]
    if failed:
        raise AcceptanceError(f"Sweep variants {failed} did not complete")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    _configure_logging(None)
    checks = run_identity_suite()
    print(format_checks(checks))
    failed = [c.name for c in checks if not c.passed]
    if failed:
        raise AcceptanceError(f"Identities failed: {failed}")
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "verify": _cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigurationError as e:
        logging.getLogger("mkdv_lab").error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except LabError as e:
        logging.getLogger("mkdv_lab").error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
