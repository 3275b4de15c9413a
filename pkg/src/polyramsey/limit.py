"""Finite stages of the Fraïssé limit of ordered polyhedra.

Vertices carry exact dyadic order keys. Every vertex, once created, owes
one demand per extension type of every small pattern it completes; the
demands are served first in, first out and a demand is met either by an
existing vertex of the right type or by a fresh one inserted just after
the lower neighbor of the required gap.
"""

from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from polyramsey.complex import (
    FiniteOrderedComplex,
    canonicalize,
    mask_bits,
    restrict_positions,
    submasks,
)
from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.exceptions import InvalidInputError
from polyramsey.fraisse import CheckReport, ClassSpec, extension_types

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Demand:
    """Realize ``link`` at gap ``position`` over the ``pattern`` vertex ids."""

    pattern: tuple[int, ...]
    position: int
    link: frozenset[int]


@dataclass(frozen=True)
class LimitSnapshot:
    """A stage relabeled onto ``0..n-1``; ``keys[i]`` is label i's key."""

    structure: FiniteOrderedComplex
    keys: tuple[Fraction, ...]


@dataclass(frozen=True)
class DemandRecord:
    step: int
    pattern: tuple[Fraction, ...]
    position: int
    link: tuple[tuple[int, ...], ...]
    vertex: Fraction
    created: bool


@dataclass
class LimitBuilderState:
    """Mutable builder; snapshots taken from it are immutable."""

    cls: ClassSpec
    pattern_size: int
    rng: np.random.Generator
    keys: list[Fraction] = field(default_factory=list)
    faces: set[frozenset[int]] = field(default_factory=set)
    sorted_keys: list[Fraction] = field(default_factory=list)
    sorted_ids: list[int] = field(default_factory=list)
    step_count: int = 0
    served_through: int = -1
    snapshots: list[LimitSnapshot] = field(default_factory=list)
    log: list[DemandRecord] = field(default_factory=list)

    @classmethod
    def start(
        cls, class_spec: ClassSpec, pattern_size: int, seed: int
    ) -> LimitBuilderState:
        state = cls(class_spec, pattern_size, np.random.default_rng(seed))
        state.add_vertex(Fraction(0), ())
        return state

    def add_vertex(
        self, key: Fraction, link_faces: Sequence[frozenset[int]]
    ) -> int:
        vertex = len(self.keys)
        self.keys.append(key)
        at = bisect_left(self.sorted_keys, key)
        self.sorted_keys.insert(at, key)
        self.sorted_ids.insert(at, vertex)
        self.faces.add(frozenset((vertex,)))
        self.faces.update(face | {vertex} for face in link_faces)
        self.snapshots.append(self.snapshot())
        return vertex

    def snapshot(self) -> LimitSnapshot:
        position = {v: i for i, v in enumerate(self.sorted_ids)}
        masks = [sum(1 << position[v] for v in face) for face in self.faces]
        return LimitSnapshot(
            FiniteOrderedComplex.from_masks(range(len(position)), masks),
            tuple(self.sorted_keys),
        )

    def pattern_complex(self, ids: tuple[int, ...]) -> FiniteOrderedComplex:
        masks = [
            u
            for u in submasks((1 << len(ids)) - 1)
            if frozenset(ids[i] for i in mask_bits(u)) in self.faces
        ]
        return FiniteOrderedComplex.from_masks(range(len(ids)), masks)

    def link_of(self, vertex: int, ids: tuple[int, ...]) -> frozenset[int]:
        local = [*submasks((1 << len(ids)) - 1), 0]
        return frozenset(
            u
            for u in local
            if (frozenset(ids[i] for i in mask_bits(u)) | {vertex})
            in self.faces
        )

    def _gap(
        self, demand: Demand
    ) -> tuple[Fraction | None, Fraction | None]:
        ids, p = demand.pattern, demand.position
        lower = self.keys[ids[p - 1]] if p > 0 else None
        upper = self.keys[ids[p]] if p < len(ids) else None
        return lower, upper

    def realized_by(self, demand: Demand) -> int | None:
        lower, upper = self._gap(demand)
        lo = 0 if lower is None else bisect_right(self.sorted_keys, lower)
        hi = (
            len(self.sorted_keys)
            if upper is None
            else bisect_left(self.sorted_keys, upper)
        )
        for vertex in self.sorted_ids[lo:hi]:
            if self.link_of(vertex, demand.pattern) == demand.link:
                return vertex
        return None

    def realize(self, demand: Demand) -> int:
        lower, _ = self._gap(demand)
        if lower is None:
            key = self.sorted_keys[0] - 1
        else:
            after = bisect_right(self.sorted_keys, lower)
            if after == len(self.sorted_keys):
                key = lower + 1
            else:
                key = (lower + self.sorted_keys[after]) / 2
        ids = demand.pattern
        faces = [frozenset(ids[i] for i in mask_bits(u)) for u in demand.link]
        return self.add_vertex(key, faces)

    def demands(self) -> Iterator[Demand]:
        """The demand stream; it grows while it is consumed."""
        vertex = 0
        while vertex < len(self.keys):
            subsets = [
                rest
                for size in range(self.pattern_size)
                for rest in combinations(range(vertex), size)
            ]
            for index in self.rng.permutation(len(subsets)):
                members = (*subsets[int(index)], vertex)
                ids = tuple(sorted(members, key=self.keys.__getitem__))
                types = extension_types(self.pattern_complex(ids), self.cls)
                for pick in self.rng.permutation(len(types)):
                    position, link = types[int(pick)]
                    yield Demand(ids, position, link)
            self.served_through = vertex
            vertex += 1

    @property
    def settled(self) -> int:
        """Last snapshot index whose demands have all been served."""
        return self.served_through


@dataclass
class LimitBuild:
    snapshots: list[LimitSnapshot]
    settled: int
    steps: int
    complete: bool
    log: list[DemandRecord]

    @property
    def final(self) -> LimitSnapshot:
        return self.snapshots[-1]

    def settled_labels(self) -> list[int]:
        """Labels of the settled snapshot's vertices in the final stage."""
        if self.settled < 0:
            return []
        keys = set(self.snapshots[self.settled].keys)
        return [i for i, key in enumerate(self.final.keys) if key in keys]


def build_limit(
    cls: ClassSpec,
    steps: int,
    seed: int = 0,
    *,
    pattern_size: int = 2,
    settings: PolyramseySettings | None = None,
) -> LimitBuild:
    """Serve ``steps`` demands and return the chain of stages.

    Demands come from every pattern of at most ``pattern_size`` vertices.
    When the step count runs out first the chain is partial; ``settled``
    says how far it is trustworthy. Requests above ``limit_step_budget``
    are capped there.
    """
    actual = settings or get_settings()
    if steps < 0:
        raise InvalidInputError("step count must be natural", value=steps)
    if steps > actual.limit_step_budget:
        logger.warning(
            "limit builder: %d steps requested, capped at %d",
            steps,
            actual.limit_step_budget,
        )
        steps = actual.limit_step_budget
    if pattern_size < 1:
        raise InvalidInputError("pattern size must be positive")
    state = LimitBuilderState.start(cls, pattern_size, seed)
    stream = state.demands()
    complete = False
    while state.step_count < steps:
        demand = next(stream, None)
        if demand is None:
            complete = True
            break
        state.step_count += 1
        vertex = state.realized_by(demand)
        created = vertex is None
        if vertex is None:
            vertex = state.realize(demand)
        state.log.append(
            DemandRecord(
                step=state.step_count,
                pattern=tuple(state.keys[v] for v in demand.pattern),
                position=demand.position,
                link=tuple(sorted(tuple(mask_bits(u)) for u in demand.link)),
                vertex=state.keys[vertex],
                created=created,
            )
        )
    if not complete:
        logger.warning(
            "limit builder stopped after %d steps; settled through stage %d",
            state.step_count,
            state.settled,
        )
    logger.info(
        "limit builder: %d vertices, %d stages",
        len(state.keys),
        len(state.snapshots),
    )
    return LimitBuild(
        snapshots=state.snapshots,
        settled=state.settled,
        steps=state.step_count,
        complete=complete,
        log=state.log,
    )


def verify_chain(snapshots: Sequence[LimitSnapshot]) -> CheckReport:
    """Each stage is an induced substructure of the next one, by key."""
    report = CheckReport("chain")
    for index, snap in enumerate(snapshots):
        report.checked += 1
        if len(snap.keys) != len(snap.structure) or any(
            a >= b for a, b in zip(snap.keys, snap.keys[1:], strict=False)
        ):
            report.fail(stage=index, reason="keys not strictly increasing")
            continue
        if index == 0:
            continue
        earlier = snapshots[index - 1]
        position = {key: i for i, key in enumerate(snap.keys)}
        if any(key not in position for key in earlier.keys):
            report.fail(stage=index, reason="a vertex disappeared")
            continue
        mask = sum(1 << position[key] for key in earlier.keys)
        trace = canonicalize(restrict_positions(snap.structure, mask))
        if trace != canonicalize(earlier.structure):
            report.fail(stage=index, reason="earlier stage is not induced")
    return report


def unfilled_gaps(
    build: LimitBuild, index: int
) -> list[tuple[Fraction, Fraction]]:
    """Adjacent key pairs of a stage with no later vertex between them."""
    if not 0 <= index < len(build.snapshots):
        raise InvalidInputError("no such stage", value=index)
    final = build.final.keys
    stage = build.snapshots[index].keys
    gaps = []
    for low, high in zip(stage, stage[1:], strict=False):
        inside = bisect_left(final, high) - bisect_right(final, low)
        if inside <= 0:
            gaps.append((low, high))
    return gaps
