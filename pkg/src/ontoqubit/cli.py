"""Command-line orchestrator: ``ontoqubit <suite> [options]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage errors or invalid parameters. The report goes to ``--output`` or stdout.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from ontoqubit.application.run_config import (
    RunConfig,
    parse_angle,
    parse_gradients,
    parse_information,
)
from ontoqubit.application.suites import SUITES
from ontoqubit.config.settings import get_settings
from ontoqubit.infrastructure.reporting.report_writers import ReportWriteError, emit_report

logger = logging.getLogger("ontoqubit")

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_USAGE = 2

_HELP = {
    "verify-born": "Born identity, response range and validity boundary of the base model.",
    "sample": "Monte-Carlo weak simulation against the Born rule (needs --seed).",
    "region": "Positivity-region map of a family member.",
    "patches": "Full-sphere icosahedral patch model checks.",
    "nonmarkov": "Stochastic-kernel residuals for z and y rotations.",
    "group": "Lie-closure dimension, orbit search and shrinking margins.",
    "resource": "Information allocation and the round-off scaling law.",
    "family-check": "Constraint identities of the model family on coordinate grids.",
}


def _shared_options() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, help="Run seed; task streams derive from it.")
    shared.add_argument("--grid", type=int, help="Grid size of the suite's sweep.")
    shared.add_argument("--theta0", type=parse_angle, help="Family angle (radians or '53.13deg').")
    shared.add_argument("--s", type=float, help="Family offset s, with |cos theta0| <= s <= 1.")
    shared.add_argument("--samples", type=int, help="Monte-Carlo draws per pair.")
    shared.add_argument("--pairs", type=int, default=20, help="Monte-Carlo (v, w) pairs.")
    shared.add_argument("--g0", type=int, default=16, help="Branch-0 grid size.")
    shared.add_argument("--g1", type=int, default=16, help="Branch-1 grid size.")
    shared.add_argument("--budget", type=int, help="Iteration budget of kernel fits or orbit searches.")
    shared.add_argument("--states", type=int, default=100, help="Haar-random states for the orbit search.")
    shared.add_argument("--g", type=parse_gradients, default=(1.0, 4.0), help="Gradient magnitudes, e.g. '1,4'.")
    shared.add_argument("--info", type=parse_information, default="ln100", help="Information budget in nats or 'ln<x>'.")
    shared.add_argument("--model", choices=("base", "family"), default="base", help="Model used for round-off.")
    shared.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    shared.add_argument("--output", type=Path, help="Write the report here instead of stdout.")
    shared.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ontoqubit", description=__doc__.splitlines()[0])
    subcommands = parser.add_subparsers(dest="suite", required=True, metavar="suite")
    shared = _shared_options()
    for name in SUITES:
        subcommands.add_parser(name, parents=[shared], help=_HELP.get(name))
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        suite=args.suite,
        seed=args.seed,
        theta0=args.theta0,
        s=args.s,
        samples=args.samples,
        pairs=args.pairs,
        grid=args.grid,
        g0=args.g0,
        g1=args.g1,
        budget=args.budget,
        states=args.states,
        g=tuple(args.g),
        info=args.info,
        model=args.model,
        output_format=args.output_format,
    )


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the suite and emit its report; returns the exit status."""

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as usage_exit:
        return EXIT_OK if usage_exit.code in (0, None) else EXIT_USAGE

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config = _config_from_args(args)
        report = SUITES[config.suite](get_settings()).execute(config)
    except ValueError as domain_error:
        logger.error("Suite %s rejected its parameters: %s", args.suite, domain_error)
        return EXIT_USAGE

    try:
        text = emit_report(report, config.output_format, args.output)
    except ReportWriteError as write_error:
        logger.error("%s", write_error)
        return EXIT_USAGE
    if args.output is None:
        sys.stdout.write(text)

    return EXIT_OK if report.passed else EXIT_FAILED_CHECKS


def main() -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
    )
    return run()


if __name__ == "__main__":
    raise SystemExit(main())
