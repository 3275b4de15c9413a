"""Arrow, CNF export and Ramsey-space commands."""

from __future__ import annotations

import argparse
import logging

from polyramsey.arrow import (
    Ambient,
    AmbientKind,
    ArrowQuery,
    Method,
    arrow_search_min,
    build_instance,
    decide_instance,
)
from polyramsey.cnf import encode_instance
from polyramsey.commands.common import (
    CommandContext,
    Outcome,
    add_mode_arg,
    add_oracle_args,
    parse_labels,
    read_complex,
    read_source,
)
from polyramsey.complex import FiniteOrderedComplex
from polyramsey.exceptions import (
    EXIT_NEGATIVE,
    EXIT_POSITIVE,
    EXIT_UNKNOWN,
    InvalidInputError,
)
from polyramsey.schemas import (
    ArrowResultPayload,
    PigeonholePayload,
    SearchMinPayload,
    SpaceRamseyPayload,
)
from polyramsey.space import (
    ExtensionColoring,
    Scope,
    pigeonhole_step,
    space_ramsey_check,
    space_ramsey_search_min,
)

logger = logging.getLogger(__name__)


def _query(args: argparse.Namespace) -> ArrowQuery:
    return ArrowQuery(
        read_complex(args.a),
        read_complex(args.b),
        read_complex(args.c),
        args.colors,
        args.mode,
        args.method,
    )


def _verdict(holds: bool) -> int:
    return EXIT_POSITIVE if holds else EXIT_NEGATIVE


def arrow_command(args: argparse.Namespace, ctx: CommandContext) -> Outcome:
    """``C -> (B)^A_r``; exit 1 carries a counterexample coloring."""
    q = _query(args)
    instance = build_instance(q, budget=ctx.budget)
    result = decide_instance(
        instance, q.method, budget=ctx.budget, settings=ctx.settings
    )
    return Outcome(
        ArrowResultPayload.from_result(result, instance),
        exit_code=_verdict(result.holds),
        plain="holds" if result.holds else "fails",
    )


def _search_min_outcome(payload: SearchMinPayload) -> Outcome:
    # not-found within the bound refutes nothing
    return Outcome(
        payload,
        exit_code=EXIT_POSITIVE if payload.found else EXIT_UNKNOWN,
        plain="not-found" if payload.minimal is None else str(payload.minimal),
    )


def arrow_min_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    ambient = Ambient(args.ambient, args.k or None)
    a = _pattern(args.a, args.a_size, ambient, "A")
    b = _pattern(args.b, args.b_size, ambient, "B")
    result = arrow_search_min(
        a,
        b,
        args.colors,
        ambient,
        args.n_max,
        mode=args.mode,
        budget=ctx.budget,
    )
    logger.info("arrow-min: %s up to N=%d", result.value, args.n_max)
    return _search_min_outcome(SearchMinPayload.from_result(result))


def _pattern(
    given: str | None, size: int | None, ambient: Ambient, name: str
) -> FiniteOrderedComplex:
    """An explicit complex, or the ambient member on ``size`` vertices."""
    if given is not None:
        return read_complex(given)
    if size is None:
        flag = name.lower()
        raise InvalidInputError(f"give --{flag} or --{flag}-size")
    return ambient.build(size)


def export_cnf_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    """DIMACS for the negation of the arrow: satisfiable iff it fails."""
    instance = build_instance(_query(args), budget=ctx.budget)
    cnf = encode_instance(instance)
    logger.info(
        "export-cnf: %d variables, %d clauses",
        cnf.num_vars,
        len(cnf.clauses),
    )
    return Outcome(
        {"num_vars": cnf.num_vars, "num_clauses": len(cnf.clauses)},
        raw=cnf.to_dimacs(),
    )


def color_rule(text: str) -> ExtensionColoring:
    """Named 2-colorings of one-vertex extensions.

    ``parity``: face count mod 2. ``const:C``: always ``C``.
    ``members:L,...``: 1 iff the new vertex is listed.
    """
    name, _, rest = text.partition(":")
    if name == "parity":
        return lambda ext: ext.face_count % 2
    if name == "const":
        value = int(rest or 0)
        return lambda ext: value
    if name == "members":
        listed = set(parse_labels(rest))
        return lambda ext: int(ext.max_vertex in listed)
    raise InvalidInputError("unknown color rule", value=text)


def pigeonhole_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    result = pigeonhole_step(
        read_complex(args.complex),
        read_source(args, ctx),
        color_rule(args.color_rule),
        horizon=(
            ctx.settings.pigeonhole_horizon
            if args.horizon is None
            else args.horizon
        ),
    )
    return Outcome(
        PigeonholePayload.from_result(result),
        plain=f"{result.color} {result.truncation}",
    )


def space_ramsey_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    result = space_ramsey_check(
        read_source(args, ctx),
        args.k,
        args.n,
        args.colors,
        args.m,
        scope=args.scope,
        method=args.method,
        budget=ctx.budget,
    )
    return Outcome(
        SpaceRamseyPayload.from_result(result),
        exit_code=_verdict(result.holds),
        plain="holds" if result.holds else "fails",
    )


def space_ramsey_min_command(
    args: argparse.Namespace, ctx: CommandContext
) -> Outcome:
    result = space_ramsey_search_min(
        read_source(args, ctx),
        args.k,
        args.n,
        args.colors,
        args.m_max,
        scope=args.scope,
        budget=ctx.budget,
    )
    logger.info(
        "space-ramsey-min: %s up to m=%d (%s)",
        result.value,
        args.m_max,
        args.scope,
    )
    return _search_min_outcome(SearchMinPayload.from_result(result))


def _add_arrow_args(
    p: argparse.ArgumentParser, *, with_method: bool = True
) -> None:
    p.add_argument("--a", required=True, help="the colored pattern A")
    p.add_argument("--b", required=True, help="the target pattern B")
    p.add_argument("--c", required=True, help="the host complex C")
    p.add_argument("--colors", type=int, default=2)
    add_mode_arg(p)
    if with_method:
        _add_method_arg(p)
    else:
        p.set_defaults(method=Method.ADVERSARIAL.value)


def _add_method_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=Method.ADVERSARIAL.value,
    )


def _add_space_args(p: argparse.ArgumentParser) -> None:
    add_oracle_args(p)
    p.add_argument("--k", type=int, required=True, help="colored length")
    p.add_argument("--n", type=int, required=True, help="target length")
    p.add_argument("--colors", type=int, default=2)
    p.add_argument(
        "--scope",
        choices=[s.value for s in Scope],
        default=Scope.EXACT.value,
        help=(
            "exact: color only the length-k approximations; cumulative: "
            "every length up to k, which needs a larger m"
        ),
    )


def register(
    subparsers: argparse._SubParsersAction[argparse.ArgumentParser],
    parents: list[argparse.ArgumentParser],
) -> None:
    p = subparsers.add_parser(
        "arrow", parents=parents, help="decide C -> (B)^A_r"
    )
    _add_arrow_args(p)
    p.set_defaults(handler=arrow_command)

    p = subparsers.add_parser(
        "arrow-min", parents=parents, help="least N with C_N -> (B)^A_r"
    )
    p.add_argument(
        "--class",
        dest="ambient",
        choices=[kind.value for kind in AmbientKind],
        required=True,
    )
    p.add_argument("--k", type=int, default=0, help="bound for 'bounded'")
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.add_argument("--a-size", type=int, default=None)
    p.add_argument("--b-size", type=int, default=None)
    p.add_argument("--colors", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    add_mode_arg(p)
    p.set_defaults(handler=arrow_min_command)

    p = subparsers.add_parser(
        "export-cnf", parents=parents, help="DIMACS for an arrow query"
    )
    _add_arrow_args(p, with_method=False)
    p.set_defaults(handler=export_cnf_command)

    p = subparsers.add_parser(
        "pigeonhole", parents=parents, help="one pigeonhole thinning step"
    )
    p.add_argument("--complex", required=True)
    add_oracle_args(p)
    p.add_argument("--color-rule", default="parity")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(handler=pigeonhole_command)

    p = subparsers.add_parser(
        "space-ramsey", parents=parents, help="finite Ramsey check at depth m"
    )
    _add_space_args(p)
    p.add_argument("--m", type=int, required=True)
    _add_method_arg(p)
    p.set_defaults(handler=space_ramsey_command)

    p = subparsers.add_parser(
        "space-ramsey-min",
        parents=parents,
        help=(
            "least depth m where the finite Ramsey check holds; the "
            "scope changes it, k=1 n=2 gives 2 exact and 3 cumulative"
        ),
    )
    _add_space_args(p)
    p.add_argument("--m-max", type=int, default=8)
    p.set_defaults(handler=space_ramsey_min_command)
