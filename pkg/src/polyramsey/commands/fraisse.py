"""Fraïssé-class commands: axioms, amalgams, limit stages."""

from __future__ import annotations

import argparse
import logging

from polyramsey.commands.common import (
    CommandContext,
    Outcome,
    add_class_arg,
    parse_labels,
    parse_map,
    read_complex,
)
from polyramsey.embeddings import Embedding, Mode
from polyramsey.exceptions import EXIT_NEGATIVE, EXIT_POSITIVE
from polyramsey.fraisse import (
    CheckReport,
    ClassSpec,
    amalgamate,
    check_extension_property,
    check_ultrahomogeneity_truncated,
    verify_class_axioms,
)
from polyramsey.limit import build_limit, verify_chain
from polyramsey.schemas import (
    AmalgamPayload,
    CheckReportPayload,
    LimitChainPayload,
)

logger = logging.getLogger(__name__)


def _report_outcome(report: CheckReport) -> Outcome:
    return Outcome(
        CheckReportPayload.from_report(report),
        exit_code=EXIT_POSITIVE if report.passed else EXIT_NEGATIVE,
        plain="pass" if report.passed else f"fail {report.first_failure}",
    )


def axioms_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    report = verify_class_axioms(
        ClassSpec.from_k(args.k),
        args.n_max,
        settings=ctx.settings,
        budget=ctx.budget,
    )
    return _report_outcome(report)


def amalgamate_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    result = amalgamate(
        read_complex(args.a),
        read_complex(args.b1),
        read_complex(args.b2),
        Embedding.from_mapping(parse_map(args.f1), Mode.STRONG),
        Embedding.from_mapping(parse_map(args.f2), Mode.STRONG),
        ClassSpec.from_k(args.k),
    )
    return Outcome(AmalgamPayload.from_result(result), plain=str(result.d))


def fraisse_build_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    """Exit 1 only when the emitted chain is not coherent."""
    cls = ClassSpec.from_k(args.k)
    build = build_limit(
        cls,
        args.steps,
        args.seed,
        pattern_size=args.pattern_size,
        settings=ctx.settings,
    )
    chain = verify_chain(build.snapshots)
    logger.info(
        "fraisse-build: %d steps, complete=%s, coherent=%s",
        build.steps,
        build.complete,
        chain.passed,
    )
    payload = LimitChainPayload.from_build(
        build,
        class_name=cls.name,
        seed=args.seed,
        chain=chain,
        include_log=args.log,
    )
    return Outcome(
        payload,
        exit_code=EXIT_POSITIVE if chain.passed else EXIT_NEGATIVE,
        plain=str(build.final.structure),
    )


def ext_check_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    f = read_complex(args.complex)
    cls = ClassSpec.from_k(args.k)
    within = None if args.within is None else parse_labels(args.within)
    if args.ultrahomogeneity:
        report = check_ultrahomogeneity_truncated(
            f, cls, args.s or 2, within=within, budget=ctx.budget
        )
    else:
        report = check_extension_property(
            f, cls, args.s or 3, within=within, budget=ctx.budget
        )
    return _report_outcome(report)


def register(
    subparsers: argparse._SubParsersAction[argparse.ArgumentParser],
    parents: list[argparse.ArgumentParser],
) -> None:
    p = subparsers.add_parser(
        "axioms", parents=parents, help="check the class axioms exhaustively"
    )
    add_class_arg(p)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(handler=axioms_command)

    p = subparsers.add_parser(
        "amalgamate", parents=parents, help="free amalgam over a common part"
    )
    p.add_argument("--a", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.add_argument("--f1", required=True, help="strong map A -> B1, '0:1,..'")
    p.add_argument("--f2", required=True, help="strong map A -> B2")
    add_class_arg(p)
    p.set_defaults(handler=amalgamate_command)

    p = subparsers.add_parser(
        "fraisse-build", parents=parents, help="finite stages of the limit"
    )
    add_class_arg(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern-size", type=int, default=2)
    p.add_argument(
        "--log", action="store_true", help="include the demand log"
    )
    p.set_defaults(handler=fraisse_build_command)

    p = subparsers.add_parser(
        "ext-check",
        parents=parents,
        help="extension property of a finite complex",
    )
    p.add_argument("--complex", required=True)
    add_class_arg(p)
    p.add_argument("--s", type=int, default=None, help="pattern size bound")
    p.add_argument("--within", default=None, help="labels patterns use")
    p.add_argument(
        "--ultrahomogeneity",
        action="store_true",
        help="check one-step ultrahomogeneity instead",
    )
    p.set_defaults(handler=ext_check_command)
