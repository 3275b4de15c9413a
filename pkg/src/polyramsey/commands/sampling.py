"""Random polyhedra and coverage statistics."""

from __future__ import annotations

import argparse
import logging

import anyio

from polyramsey.commands.common import CommandContext, Outcome
from polyramsey.randgen import (
    GenParams,
    embedding_coverage_async,
    embedding_coverage_test,
    random_polyhedron,
)
from polyramsey.schemas import ComplexPayload, CoveragePayload

logger = logging.getLogger(__name__)


def _params(args: argparse.Namespace) -> GenParams:
    return GenParams.build(n=args.n, p=args.p, k=args.k, seed=args.seed)


def random_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    c = random_polyhedron(_params(args), settings=ctx.settings)
    return Outcome(ComplexPayload.from_complex(c), plain=str(c))


def coverage_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    """Frequencies do not depend on the worker count."""
    params = _params(args)
    workers = args.workers or ctx.settings.workers
    logger.info("coverage: %d samples on %d workers", args.samples, workers)
    if workers > 1:
        report = anyio.run(
            embedding_coverage_async, params, args.s, args.samples, workers
        )
    else:
        report = embedding_coverage_test(params, args.s, args.samples)
    payload = CoveragePayload.from_report(report, params, args.s)
    return Outcome(
        payload,
        plain="\n".join(
            f"{t.frequency:.4f} {t.target.to_complex()}"
            for t in payload.targets
        ),
    )


def _add_gen_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--p", type=float, default=0.5, help="heads probability")
    p.add_argument("--k", type=int, default=0, help="0 is unbounded")
    p.add_argument("--seed", type=int, default=0)


def register(
    subparsers: argparse._SubParsersAction[argparse.ArgumentParser],
    parents: list[argparse.ArgumentParser],
) -> None:
    p = subparsers.add_parser(
        "random", parents=parents, help="one random (k-)polyhedron"
    )
    _add_gen_args(p)
    p.set_defaults(handler=random_command)

    p = subparsers.add_parser(
        "coverage", parents=parents, help="embedding coverage frequencies"
    )
    _add_gen_args(p)
    p.add_argument("--s", type=int, default=3, help="target size bound")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=coverage_command)
