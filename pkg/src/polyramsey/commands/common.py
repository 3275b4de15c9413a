"""Argument readers and the context shared by every command."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from polyramsey.budget import SearchBudget
from polyramsey.complex import FiniteOrderedComplex
from polyramsey.config import PolyramseySettings
from polyramsey.embeddings import Mode
from polyramsey.exceptions import EXIT_POSITIVE, InvalidInputError
from polyramsey.protocols import ComplexOracle
from polyramsey.registry import OracleRegistry, load_oracle_file
from polyramsey.schemas import parse_complex


@dataclass
class CommandContext:
    """What a command may use besides its own arguments."""

    settings: PolyramseySettings
    budget: SearchBudget
    registry: OracleRegistry


@dataclass
class Outcome:
    """A command result.

    ``result`` goes under the JSON ``result`` key; ``plain`` replaces it
    under ``--plain``; ``raw`` is written as is, without a header.
    """

    result: Any
    exit_code: int = EXIT_POSITIVE
    plain: str | None = None
    raw: str | None = None


Handler = Callable[[argparse.Namespace, CommandContext], Outcome]


def read_text_source(value: str) -> str:
    """``-`` is stdin, ``@path`` a file, anything else the literal text."""
    if value == "-":
        return sys.stdin.read()
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            return path.read_text()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {path}") from exc
    return value


def read_complex(value: str) -> FiniteOrderedComplex:
    return parse_complex(read_text_source(value))


def parse_labels(value: str) -> tuple[int, ...]:
    """``"0,2,5"`` to ``(0, 2, 5)``; the empty string is the empty set."""
    try:
        return tuple(int(tok) for tok in value.split(",") if tok.strip())
    except ValueError as exc:
        raise InvalidInputError("labels must be integers", value=value) from exc


def parse_map(value: str) -> dict[int, int]:
    """``"0:0,1:2"`` to ``{0: 0, 1: 2}``."""
    mapping: dict[int, int] = {}
    try:
        for pair in value.split(","):
            if pair.strip():
                source, _, target = pair.partition(":")
                mapping[int(source)] = int(target)
    except ValueError as exc:
        raise InvalidInputError("map entries are 'a:b'", value=value) from exc
    return mapping


def parse_param(value: str) -> tuple[str, Any]:
    """``key=value``; the value is read as JSON when it parses."""
    key, sep, raw = value.partition("=")
    if not sep or not key:
        raise InvalidInputError(
            "oracle parameters are 'key=value'", value=value
        )
    try:
        return key, json.loads(raw)
    except ValueError:
        return key, raw


def add_oracle_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--oracle", metavar="KIND", help="oracle kind")
    group.add_argument(
        "--oracle-file", metavar="PATH", help="JSON oracle file"
    )
    group.add_argument(
        "--host",
        metavar="COMPLEX",
        help="finite complex standing in for the oracle",
    )
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="oracle parameter; may repeat",
    )


def oracle_params(args: argparse.Namespace) -> dict[str, Any]:
    return dict(parse_param(p) for p in args.param)


def read_source(
    args: argparse.Namespace, ctx: CommandContext
) -> ComplexOracle | FiniteOrderedComplex:
    """The complex named by ``--oracle``, ``--oracle-file`` or ``--host``."""
    if args.host is not None:
        return read_complex(args.host)
    if args.oracle_file is not None:
        return load_oracle_file(args.oracle_file, ctx.registry)
    if args.oracle is not None:
        return ctx.registry.build(args.oracle, oracle_params(args))
    raise InvalidInputError("give --oracle, --oracle-file or --host")


def add_mode_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.STRONG.value,
        help="embedding notion (default: strong)",
    )


def add_class_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--k",
        type=int,
        default=0,
        help="face-size bound; 0 is the unbounded class",
    )
