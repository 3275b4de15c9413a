"""Commands on single complexes: enumeration, restriction, embeddings."""

from __future__ import annotations

import argparse
import logging

from polyramsey.commands.common import (
    CommandContext,
    Outcome,
    add_class_arg,
    add_mode_arg,
    add_oracle_args,
    parse_labels,
    read_complex,
    read_source,
)
from polyramsey.complex import (
    approx,
    canonicalize,
    enumerate_class,
    format_text,
    restrict,
)
from polyramsey.embeddings import enumerate_copies, enumerate_embeddings
from polyramsey.exceptions import EXIT_NEGATIVE, EXIT_POSITIVE
from polyramsey.oracles import depth
from polyramsey.schemas import ComplexPayload, DepthPayload, EmbeddingPayload

logger = logging.getLogger(__name__)


def enumerate_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    """Every canonical complex on ``n`` vertices in the chosen class."""
    found = enumerate_class(
        args.n, args.k or None, settings=ctx.settings, budget=ctx.budget
    )
    logger.info("enumerate: %d complexes on %d vertices", len(found), args.n)
    return Outcome(
        result={
            "count": len(found),
            "complexes": [ComplexPayload.from_complex(c) for c in found],
        },
        plain="\n".join(format_text(c) for c in found),
    )


def restrict_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    c = restrict(read_complex(args.complex), parse_labels(args.subset))
    return Outcome(ComplexPayload.from_complex(c), plain=format_text(c))


def approx_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    c = approx(read_source(args, ctx), args.n)
    return Outcome(ComplexPayload.from_complex(c), plain=format_text(c))


def depth_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    """Exit 1 when the depth is undefined within the horizon."""
    value = depth(
        read_complex(args.complex),
        read_source(args, ctx),
        horizon=(
            ctx.settings.depth_horizon
            if args.horizon is None
            else args.horizon
        ),
    )
    return Outcome(
        DepthPayload.from_depth(value),
        exit_code=EXIT_POSITIVE if value.defined else EXIT_NEGATIVE,
        plain=str(value),
    )


def embed_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    found = enumerate_embeddings(
        read_complex(args.source),
        read_complex(args.target),
        args.mode,
        budget=ctx.budget,
    )
    logger.info("embed: %d %s embeddings", len(found), args.mode)
    return Outcome(
        {
            "count": len(found),
            "embeddings": [EmbeddingPayload.from_embedding(f) for f in found],
        },
        exit_code=EXIT_POSITIVE if found else EXIT_NEGATIVE,
        plain="\n".join(
            " ".join(f"{a}:{b}" for a, b in f.pairs) for f in found
        ),
    )


def copies_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    found = enumerate_copies(
        read_complex(args.host_complex),
        read_complex(args.pattern),
        args.mode,
        budget=ctx.budget,
    )
    logger.info("copies: %d %s copies", len(found), args.mode)
    return Outcome(
        {
            "count": len(found),
            "copies": [ComplexPayload.from_complex(c) for c in found],
        },
        exit_code=EXIT_POSITIVE if found else EXIT_NEGATIVE,
        plain="\n".join(format_text(c) for c in found),
    )


def canonicalize_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    c = canonicalize(read_complex(args.complex))
    return Outcome(ComplexPayload.from_complex(c), plain=format_text(c))


def register(
    subparsers: argparse._SubParsersAction[argparse.ArgumentParser],
    parents: list[argparse.ArgumentParser],
) -> None:
    p = subparsers.add_parser(
        "enumerate", parents=parents, help="list a class up to isomorphism"
    )
    p.add_argument("--n", type=int, required=True, help="vertex count")
    add_class_arg(p)
    p.set_defaults(handler=enumerate_command)

    p = subparsers.add_parser(
        "restrict", parents=parents, help="restrict a complex to a subset"
    )
    p.add_argument("--complex", required=True)
    p.add_argument("--subset", required=True, help="labels, e.g. 0,2")
    p.set_defaults(handler=restrict_command)

    p = subparsers.add_parser(
        "approx", parents=parents, help="the n-th approximation"
    )
    add_oracle_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=approx_command)

    p = subparsers.add_parser(
        "depth", parents=parents, help="depth of a finite complex"
    )
    p.add_argument("--complex", required=True)
    add_oracle_args(p)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(handler=depth_command)

    p = subparsers.add_parser(
        "embed", parents=parents, help="embeddings of one complex in another"
    )
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    add_mode_arg(p)
    p.set_defaults(handler=embed_command)

    p = subparsers.add_parser(
        "copies", parents=parents, help="copies of a pattern in a host"
    )
    p.add_argument("--host", dest="host_complex", required=True)
    p.add_argument("--pattern", required=True)
    add_mode_arg(p)
    p.set_defaults(handler=copies_command)

    p = subparsers.add_parser(
        "canonicalize", parents=parents, help="relabel onto 0..n-1"
    )
    p.add_argument("--complex", required=True)
    p.set_defaults(handler=canonicalize_command)
