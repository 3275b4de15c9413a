"""Subcommand modules; each one registers its parsers."""

from __future__ import annotations

import argparse

from polyramsey.commands import complexes, fraisse, ramsey, sampling


def register_all(
    subparsers: argparse._SubParsersAction[argparse.ArgumentParser],
    parents: list[argparse.ArgumentParser],
) -> None:
    for module in (complexes, ramsey, fraisse, sampling):
        module.register(subparsers, parents)
