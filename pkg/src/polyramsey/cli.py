"""Command-line entry point: ``polyramsey COMMAND [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from polyramsey import __version__
from polyramsey.budget import SearchBudget
from polyramsey.commands import register_all
from polyramsey.commands.common import CommandContext, Outcome, oracle_params
from polyramsey.config import PolyramseySettings
from polyramsey.exceptions import (
    EXIT_USAGE,
    ConfigurationError,
    InvalidInputError,
    PolyramseyError,
    exit_code_for,
)
from polyramsey.registry import default_registry
from polyramsey.schemas import RunDocument, RunHeader

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser with every subcommand registered.

    Output and guard options belong to the subcommands, so they follow
    the command name.

    Returns:
        The configured top-level parser.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output here")
    common.add_argument(
        "--plain", action="store_true", help="one-line text output"
    )
    common.add_argument("--node-budget", type=int, default=None)
    common.add_argument(
        "--time-budget", type=float, default=None, help="seconds"
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="polyramsey",
        description="Ramsey-space workbench for ordered polyhedra.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, metavar="COMMAND"
    )
    register_all(subparsers, [common])
    return parser


def build_settings(args: argparse.Namespace) -> PolyramseySettings:
    """Environment settings with the command-line guards on top."""
    overrides: dict[str, Any] = {}
    if args.node_budget is not None:
        overrides["node_budget"] = args.node_budget
    if args.time_budget is not None:
        overrides["time_budget_seconds"] = args.time_budget
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    try:
        return PolyramseySettings(**overrides)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid settings: {exc}") from exc


def configure_logging(settings: PolyramseySettings, verbose: int) -> None:
    if verbose > 1:
        level: int | str = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = settings.log_level.upper()
    logging.basicConfig(level=level, stream=sys.stderr, format=LOG_FORMAT)


def _seed(args: argparse.Namespace) -> int | None:
    seed = getattr(args, "seed", None)
    if seed is None and getattr(args, "param", None):
        seed = oracle_params(args).get("seed")
    return seed if isinstance(seed, int) else None


def render(
    args: argparse.Namespace,
    outcome: Outcome,
    settings: PolyramseySettings,
) -> str:
    """The text a command writes: raw, plain, or the JSON document."""
    if outcome.raw is not None:
        return outcome.raw
    if args.plain and outcome.plain is not None:
        return outcome.plain + "\n"
    document = RunDocument(
        header=RunHeader(
            version=__version__,
            command=args.command,
            seed=_seed(args),
            guards=settings.model_dump(exclude={"log_level"}),
        ),
        result=outcome.result,
    )
    return document.model_dump_json(indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InvalidInputError(f"cannot write {out}") from exc


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the command and return its exit code."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        settings = build_settings(args)
        configure_logging(settings, args.verbose)
        ctx = CommandContext(
            settings=settings,
            budget=SearchBudget.from_settings(settings),
            registry=default_registry(),
        )
        logger.debug("running %s", args.command)
        outcome = args.handler(args, ctx)
        _write(render(args, outcome, settings), args.out)
    except PolyramseyError as exc:
        return exit_code_for(exc)
    return outcome.exit_code


def main() -> None:
    sys.exit(run())
