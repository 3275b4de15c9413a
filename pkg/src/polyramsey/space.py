"""The Ramsey space of ordered polyhedra: approximations by depth.

``AR^m_k(A)`` is the set of length-``k`` approximations ``(b, S_b)`` with
``b`` inside the first ``m`` vertices of ``A``, ``max(b)`` the ``m``-th
vertex and ``S_b`` any hereditary family inside ``S_A|b`` covering ``b``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations

from polyramsey.arrow import (
    ArrowInstance,
    Method,
    SearchMinResult,
    decide_instance,
)
from polyramsey.budget import SearchBudget, resolve_budget
from polyramsey.complex import (
    FiniteOrderedComplex,
    approx,
    available_truncation,
    enumerate_subcomplexes,
    leq,
    leq_fin,
    restrict,
    restrict_positions,
)
from polyramsey.config import get_settings
from polyramsey.exceptions import InvalidInputError, NoCandidatesError
from polyramsey.oracles import depth
from polyramsey.protocols import ComplexOracle

logger = logging.getLogger(__name__)

Source = ComplexOracle | FiniteOrderedComplex
ExtensionColoring = Callable[[FiniteOrderedComplex], int]


class Scope(StrEnum):
    """Which approximations a finite Ramsey check colors.

    ``exact``: depth exactly ``m`` and ``a <=_fin b``. ``cumulative``:
    depth at most ``m`` and ``a <= b``.
    """

    EXACT = "exact"
    CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class PigeonholeResult:
    truncation: FiniteOrderedComplex
    color: int
    depth: int
    candidates: int


def one_vertex_extensions(
    a: FiniteOrderedComplex, host: FiniteOrderedComplex
) -> list[FiniteOrderedComplex]:
    """``(a + {m}, S_host | a + {m})`` for every vertex ``m > max(a)``."""
    top = a.max_vertex if not a.is_empty else -1
    return [
        restrict(host, (*a.vertices, m)) for m in host.vertices if m > top
    ]


def pigeonhole_step(
    a: FiniteOrderedComplex,
    big: Source,
    coloring: ExtensionColoring,
    *,
    horizon: int | None = None,
) -> PigeonholeResult:
    """Thin ``big`` so that all one-vertex extensions of ``a`` share a color.

    Candidates are the vertices after ``r_n(big)``, ``n = depth(a, big)``,
    within the first ``horizon`` vertices; the empty face makes every such
    vertex a candidate. The larger color class wins, ties go to color 0.
    """
    n = depth(a, big)
    if n.value is None:
        raise InvalidInputError("a is not an approximation of the complex")
    limit = (
        horizon if horizon is not None else get_settings().pigeonhole_horizon
    )
    host = available_truncation(big, limit)
    prefix = host.vertices[: n.value]
    candidates = host.vertices[n.value :]
    if not candidates:
        raise NoCandidatesError(limit)
    classes: tuple[list[int], list[int]] = ([], [])
    for m in candidates:
        color = coloring(restrict(host, (*a.vertices, m)))
        if color not in (0, 1):
            raise InvalidInputError(
                "extension colors must be 0 or 1", value=color
            )
        classes[color].append(m)
    chosen = 0 if len(classes[0]) >= len(classes[1]) else 1
    logger.info(
        "pigeonhole: %d candidates, color %d keeps %d",
        len(candidates),
        chosen,
        len(classes[chosen]),
    )
    return PigeonholeResult(
        truncation=restrict(host, (*prefix, *classes[chosen])),
        color=chosen,
        depth=n.value,
        candidates=len(candidates),
    )


def _approx_at_depth(
    host: FiniteOrderedComplex, m: int, k: int
) -> Iterator[FiniteOrderedComplex]:
    top = 1 << (m - 1)
    for rest in combinations(range(m - 1), k - 1):
        mask = top | sum(1 << p for p in rest)
        yield from enumerate_subcomplexes(restrict_positions(host, mask))


def enumerate_space_approx(
    big: Source,
    m: int,
    k: int,
    *,
    budget: SearchBudget | None = None,
) -> list[FiniteOrderedComplex]:
    """List ``AR^m_k(big)`` in a deterministic order."""
    if k < 1 or k > m:
        raise InvalidInputError("need 1 <= k <= m", value=(k, m))
    actual = resolve_budget(budget)
    found = []
    for item in _approx_at_depth(approx(big, m), m, k):
        actual.tick()
        found.append(item)
    return found


@dataclass
class SpaceRamseyResult:
    holds: bool
    scope: Scope
    m: int
    counterexample: tuple[int, ...] | None = None
    colored: list[FiniteOrderedComplex] = field(default_factory=list)
    targets: list[FiniteOrderedComplex] = field(default_factory=list)
    nodes: int = 0


def space_instance(
    big: Source,
    k: int,
    n: int,
    r: int,
    m: int,
    *,
    scope: Scope | str = Scope.EXACT,
    budget: SearchBudget | None = None,
) -> ArrowInstance:
    """The coloring hypergraph behind a finite Ramsey check."""
    if not 1 <= k <= n <= m:
        raise InvalidInputError("need 1 <= k <= n <= m", value=(k, n, m))
    if r < 1:
        raise InvalidInputError("number of colors must be positive")
    scope = Scope(scope)
    actual = resolve_budget(budget)
    if scope is Scope.EXACT:
        colored = enumerate_space_approx(big, m, k, budget=actual)
        targets = enumerate_space_approx(big, m, n, budget=actual)
        below: Callable[
            [FiniteOrderedComplex, FiniteOrderedComplex], bool
        ] = leq_fin
    else:
        colored = [
            a
            for j in range(k, m + 1)
            for a in enumerate_space_approx(big, j, k, budget=actual)
        ]
        targets = [
            b
            for j in range(n, m + 1)
            for b in enumerate_space_approx(big, j, n, budget=actual)
        ]
        below = leq
    edges = []
    for b in targets:
        actual.tick()
        edges.append(tuple(i for i, a in enumerate(colored) if below(a, b)))
    return ArrowInstance(tuple(colored), tuple(targets), tuple(edges), r)


def space_ramsey_check(
    big: Source,
    k: int,
    n: int,
    r: int,
    m: int,
    *,
    scope: Scope | str = Scope.EXACT,
    method: Method | str = Method.ADVERSARIAL,
    budget: SearchBudget | None = None,
) -> SpaceRamseyResult:
    """Decide whether every ``r``-coloring leaves a monochromatic target.

    A target ``b`` is monochromatic when all colored approximations below
    it share one color.
    """
    actual = resolve_budget(budget)
    instance = space_instance(
        big, k, n, r, m, scope=scope, budget=actual
    )
    decided = decide_instance(instance, method, budget=actual)
    return SpaceRamseyResult(
        holds=decided.holds,
        scope=Scope(scope),
        m=m,
        counterexample=decided.counterexample,
        colored=list(instance.a_copies),
        targets=list(instance.b_copies),
        nodes=actual.nodes,
    )


def space_ramsey_search_min(
    big: Source,
    k: int,
    n: int,
    r: int,
    m_max: int,
    *,
    scope: Scope | str = Scope.EXACT,
    budget: SearchBudget | None = None,
) -> SearchMinResult:
    """Least ``m <= m_max`` for which :func:`space_ramsey_check` holds."""
    actual = resolve_budget(budget)
    outcome = SearchMinResult(value=None)
    for m in range(n, m_max + 1):
        outcome.tried.append(m)
        result = space_ramsey_check(
            big, k, n, r, m, scope=scope, budget=actual
        )
        logger.info("m=%d: %s", m, "holds" if result.holds else "fails")
        if result.holds:
            outcome.value = m
            break
    return outcome


def neighborhood_member(
    candidate: Source,
    a: FiniteOrderedComplex,
    big: ComplexOracle,
    *,
    horizon: int | None = None,
) -> bool:
    """Membership of ``candidate`` in the neighborhood ``[a, big]``.

    ``False`` is definitive; ``True`` holds up to the horizon only.
    """
    if available_truncation(candidate, len(a)) != a:
        return False
    return leq(candidate, big, horizon=horizon)
