"""Arrow relations ``C -> (B)^A_r`` for finite ordered complexes.

An arrow query reduces to a hypergraph coloring question: the vertices are
the copies of ``A`` in ``C`` and every copy ``B'`` of ``B`` contributes the
hyperedge of ``A``-copies lying inside it. The arrow holds iff every
``r``-coloring of the vertices makes some hyperedge monochromatic.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from polyramsey.budget import SearchBudget, resolve_budget
from polyramsey.complex import (
    FiniteOrderedComplex,
    bounded_full,
    full_simplex,
    leq,
    pure_set,
)
from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.embeddings import Mode, enumerate_copies
from polyramsey.exceptions import InvalidInputError, ResourceLimitError

logger = logging.getLogger(__name__)

# colorings scored per numpy batch in exhaustive mode
_EXHAUSTIVE_CHUNK = 1 << 16


class Method(StrEnum):
    ADVERSARIAL = "adversarial"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class ArrowQuery:
    a: FiniteOrderedComplex
    b: FiniteOrderedComplex
    c: FiniteOrderedComplex
    r: int
    mode: Mode = Mode.STRONG
    method: Method = Method.ADVERSARIAL

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidInputError("number of colors must be positive")
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "method", Method(self.method))


@dataclass(frozen=True)
class ArrowInstance:
    """The copy hypergraph of a query."""

    a_copies: tuple[FiniteOrderedComplex, ...]
    b_copies: tuple[FiniteOrderedComplex, ...]
    edges: tuple[tuple[int, ...], ...]
    r: int


@dataclass
class ArrowResult:
    holds: bool
    counterexample: tuple[int, ...] | None = None
    witness_map: tuple[int, ...] | None = None
    method: Method = Method.ADVERSARIAL
    nodes: int = 0
    elapsed: float = 0.0
    copies: int = 0
    targets: int = 0


def _inside(
    small: FiniteOrderedComplex, big: FiniteOrderedComplex, mode: Mode
) -> bool:
    if mode is Mode.STRONG:
        return set(small.vertices) <= set(big.vertices)
    return leq(small, big)


def build_instance(
    q: ArrowQuery, *, budget: SearchBudget | None = None
) -> ArrowInstance:
    """Enumerate copies and wire up the hyperedges."""
    actual = resolve_budget(budget)
    a_copies = tuple(enumerate_copies(q.c, q.a, q.mode, budget=actual))
    b_copies = tuple(enumerate_copies(q.c, q.b, q.mode, budget=actual))
    edges = []
    for target in b_copies:
        actual.tick()
        edges.append(
            tuple(
                i
                for i, copy in enumerate(a_copies)
                if _inside(copy, target, q.mode)
            )
        )
    logger.debug(
        "arrow instance: %d copies of A, %d copies of B",
        len(a_copies),
        len(b_copies),
    )
    return ArrowInstance(a_copies, b_copies, tuple(edges), q.r)


def verify_counterexample(
    instance: ArrowInstance, coloring: Sequence[int]
) -> bool:
    """Independent check that ``coloring`` leaves no hyperedge monochromatic."""
    if len(coloring) != len(instance.a_copies):
        return False
    if any(not 0 <= color < instance.r for color in coloring):
        return False
    return first_monochromatic(instance, coloring) is None


def first_monochromatic(
    instance: ArrowInstance, coloring: Sequence[int]
) -> int | None:
    """Index of the first copy of B whose A-copies share one color."""
    for index, edge in enumerate(instance.edges):
        if len({coloring[i] for i in edge}) <= 1:
            return index
    return None


def _adversarial(
    instance: ArrowInstance, budget: SearchBudget
) -> tuple[int, ...] | None:
    """Backtrack over colorings; return one with no monochromatic edge."""
    count, r = len(instance.a_copies), instance.r
    containing: list[list[int]] = [[] for _ in range(count)]
    for index, edge in enumerate(instance.edges):
        for i in edge:
            containing[i].append(index)
    remaining = [len(edge) for edge in instance.edges]
    tally = [[0] * r for _ in instance.edges]
    coloring = [-1] * count

    def closes_monochromatic(i: int, color: int) -> bool:
        return any(
            remaining[e] == 1 and tally[e][color] == len(instance.edges[e]) - 1
            for e in containing[i]
        )

    def assign(i: int, used: int) -> bool:
        if i == count:
            return True
        # colors are interchangeable: copy i opens at most one new color
        for color in range(min(used + 1, r)):
            budget.tick()
            if closes_monochromatic(i, color):
                continue
            coloring[i] = color
            for e in containing[i]:
                remaining[e] -= 1
                tally[e][color] += 1
            if assign(i + 1, max(used, color + 1)):
                return True
            for e in containing[i]:
                remaining[e] += 1
                tally[e][color] -= 1
            coloring[i] = -1
        return False

    return tuple(coloring) if assign(0, 0) else None


def _exhaustive(
    instance: ArrowInstance, settings: PolyramseySettings
) -> tuple[tuple[int, ...] | None, tuple[int, ...]]:
    """Score every coloring; return a counterexample and the witnesses.

    Coloring number ``t`` gives copy ``i`` the base-``r`` digit ``i`` of
    ``t``. The witness of a coloring is its first monochromatic edge.
    """
    count, r = len(instance.a_copies), instance.r
    total = r**count
    if total > settings.exhaustive_colorings_max:
        raise ResourceLimitError(
            "exhaustive colorings", settings.exhaustive_colorings_max
        )
    powers = r ** np.arange(count, dtype=np.int64)
    witnesses = np.full(total, -1, dtype=np.int64)
    for start in range(0, total, _EXHAUSTIVE_CHUNK):
        numbers = np.arange(start, min(total, start + _EXHAUSTIVE_CHUNK))
        colors = (numbers[:, None] // powers[None, :]) % r
        pending = np.ones(len(numbers), dtype=bool)
        for index, edge in enumerate(instance.edges):
            if edge:
                block = colors[:, list(edge)]
                mono = np.all(block == block[:, :1], axis=1)
            else:
                mono = np.ones(len(numbers), dtype=bool)
            hit = pending & mono
            witnesses[start : start + len(numbers)][hit] = index
            pending &= ~mono
            if not pending.any():
                break
    missing = np.flatnonzero(witnesses < 0)
    if missing.size:
        t = int(missing[0])
        coloring = tuple(int(d) for d in (t // powers) % r)
        return coloring, tuple(int(w) for w in witnesses)
    return None, tuple(int(w) for w in witnesses)


def arrow_check(
    q: ArrowQuery,
    *,
    budget: SearchBudget | None = None,
    settings: PolyramseySettings | None = None,
) -> ArrowResult:
    """Decide ``C -> (B)^A_r``.

    Without any copy of ``B`` in ``C`` the arrow fails; the all-zero
    coloring is returned as the counterexample.
    """
    actual = resolve_budget(budget)
    instance = build_instance(q, budget=actual)
    return decide_instance(
        instance, q.method, budget=actual, settings=settings
    )


def decide_instance(
    instance: ArrowInstance,
    method: Method | str = Method.ADVERSARIAL,
    *,
    budget: SearchBudget | None = None,
    settings: PolyramseySettings | None = None,
) -> ArrowResult:
    """Solve the hypergraph question behind an arrow query."""
    actual = resolve_budget(budget)
    method = Method(method)
    result = ArrowResult(
        holds=False,
        method=method,
        copies=len(instance.a_copies),
        targets=len(instance.edges),
    )
    if not instance.edges:
        result.counterexample = (0,) * len(instance.a_copies)
    elif not all(instance.edges):
        # a copy of B holding no copy of A is monochromatic under any coloring
        result.holds = True
    elif method is Method.EXHAUSTIVE:
        bad, witnesses = _exhaustive(instance, settings or get_settings())
        result.counterexample = bad
        result.holds = bad is None
        result.witness_map = witnesses
    else:
        bad = _adversarial(instance, actual)
        result.counterexample = bad
        result.holds = bad is None
    result.nodes = actual.nodes
    result.elapsed = actual.elapsed()
    return result


class AmbientKind(StrEnum):
    SET = "set"
    GRAPH = "graph"
    SIMPLEX = "simplex"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class Ambient:
    """A growth rule ``N -> C_N`` on the vertex set ``0..N-1``."""

    kind: AmbientKind
    k: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AmbientKind(self.kind))
        if self.kind is AmbientKind.BOUNDED and (self.k is None or self.k < 1):
            raise InvalidInputError("bounded ambient needs k >= 1")

    def build(self, n: int) -> FiniteOrderedComplex:
        labels = range(n)
        if self.kind is AmbientKind.SET:
            return pure_set(labels)
        if self.kind is AmbientKind.GRAPH:
            return bounded_full(labels, 2)
        if self.kind is AmbientKind.SIMPLEX:
            return full_simplex(labels)
        return bounded_full(labels, self.k or 1)


@dataclass
class SearchMinResult:
    """Least parameter that works, or ``None`` for not-found."""

    value: int | None
    tried: list[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.value is not None


def arrow_search_min(
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    r: int,
    ambient: Ambient,
    n_max: int,
    *,
    mode: Mode | str = Mode.STRONG,
    budget: SearchBudget | None = None,
) -> SearchMinResult:
    """Least ``N <= n_max`` with ``C_N -> (B)^A_r``.

    Sizes below ``|B|`` are skipped since ``C_N`` cannot contain ``B``.
    """
    actual = resolve_budget(budget)
    outcome = SearchMinResult(value=None)
    for n in range(max(len(b), 1), n_max + 1):
        outcome.tried.append(n)
        q = ArrowQuery(a, b, ambient.build(n), r, Mode(mode))
        result = arrow_check(q, budget=actual)
        logger.info("N=%d: arrow %s", n, "holds" if result.holds else "fails")
        if result.holds:
            outcome.value = n
            break
    return outcome
