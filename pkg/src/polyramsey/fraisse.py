"""Fraïssé-class checks for ordered polyhedra and k-polyhedra.

Extension questions are answered through *extension types*: a new vertex
over a finite pattern is described by its order position among the
pattern vertices and its link, the set of pattern faces ``u`` (the empty
face included) such that ``u + {new}`` is a face.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from polyramsey.budget import SearchBudget, resolve_budget
from polyramsey.complex import (
    FiniteOrderedComplex,
    canonicalize,
    close_downward,
    downsets,
    enumerate_class,
    format_text,
    mask_bits,
    restrict_positions,
    submasks,
)
from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.embeddings import (
    Embedding,
    Mode,
    enumerate_embeddings,
    is_embedding,
)
from polyramsey.exceptions import InvalidInputError, ResourceLimitError

logger = logging.getLogger(__name__)

# (position, link) with the link as local masks over the pattern
ExtensionType = tuple[int, frozenset[int]]


@dataclass(frozen=True)
class ClassSpec:
    """``AP`` when ``max_face_size`` is None, ``AP_k`` otherwise."""

    max_face_size: int | None = None

    def __post_init__(self) -> None:
        if self.max_face_size is not None and self.max_face_size < 1:
            raise InvalidInputError(
                "face-size bound must be positive", value=self.max_face_size
            )

    @classmethod
    def from_k(cls, k: int) -> ClassSpec:
        """``k = 0`` selects the unbounded class."""
        return cls(max_face_size=k or None)

    @property
    def name(self) -> str:
        if self.max_face_size is None:
            return "unbounded"
        return f"k={self.max_face_size}"

    def contains(self, c: FiniteOrderedComplex) -> bool:
        if c.is_empty:
            return False
        k = self.max_face_size
        return k is None or all(len(f) <= k for f in c.facets)

    def require(self, *members: FiniteOrderedComplex) -> None:
        for c in members:
            if not self.contains(c):
                raise InvalidInputError(
                    f"complex is not in class {self.name}",
                    value=format_text(c),
                )

    def members(
        self, n: int, *, settings: PolyramseySettings | None = None
    ) -> list[FiniteOrderedComplex]:
        return enumerate_class(n, self.max_face_size, settings=settings)


@dataclass
class CheckReport:
    """Outcome of an exhaustive check: counts plus the first violation."""

    name: str
    checked: int = 0
    failures: int = 0
    first_failure: dict[str, Any] | None = None
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, **context: Any) -> None:
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = context
            logger.info("%s: first failure %s", self.name, context)


@dataclass(frozen=True)
class JointEmbedding:
    d: FiniteOrderedComplex
    g_a: Embedding
    g_b: Embedding


@dataclass(frozen=True)
class AmalgamResult:
    d: FiniteOrderedComplex
    g1: Embedding
    g2: Embedding


@dataclass(frozen=True)
class OnePointExtension:
    structure: FiniteOrderedComplex
    position: int


def joint_embed(
    a: FiniteOrderedComplex, b: FiniteOrderedComplex, cls: ClassSpec
) -> JointEmbedding:
    """Order sum: all of ``a`` before all of ``b``, relabeled from 0."""
    cls.require(a, b)
    shift = len(a)
    to_a = {v: i for i, v in enumerate(a.vertices)}
    to_b = {v: shift + i for i, v in enumerate(b.vertices)}
    facets = [[to_a[v] for v in f] for f in a.facets]
    facets += [[to_b[v] for v in f] for f in b.facets]
    d = close_downward(facets, range(shift + len(b)))
    return JointEmbedding(
        d,
        Embedding.from_mapping(to_a, Mode.STRONG),
        Embedding.from_mapping(to_b, Mode.STRONG),
    )


def amalgamate(
    a: FiniteOrderedComplex,
    b1: FiniteOrderedComplex,
    b2: FiniteOrderedComplex,
    f1: Embedding,
    f2: Embedding,
    cls: ClassSpec,
) -> AmalgamResult:
    """Free amalgam of ``b1`` and ``b2`` over ``a``.

    In every gap between consecutive images of ``a`` the vertices only in
    ``b1`` come first, then those only in ``b2``. No face is added beyond
    the images of the two families.
    """
    cls.require(a, b1, b2)
    for f, b in ((f1, b1), (f2, b2)):
        if not is_embedding(f.mapping, a, b, Mode.STRONG):
            raise InvalidInputError("amalgamation needs strong embeddings")
    shared1 = [f1(v) for v in a.vertices]
    shared2 = [f2(v) for v in a.vertices]
    gaps1 = _gap_blocks(b1.vertices, shared1)
    gaps2 = _gap_blocks(b2.vertices, shared2)
    g1: dict[int, int] = {}
    g2: dict[int, int] = {}
    label = 0
    for gap in range(len(shared1) + 1):
        for v in gaps1[gap]:
            g1[v] = label
            label += 1
        for v in gaps2[gap]:
            g2[v] = label
            label += 1
        if gap < len(shared1):
            g1[shared1[gap]] = g2[shared2[gap]] = label
            label += 1
    facets = [[g1[v] for v in f] for f in b1.facets]
    facets += [[g2[v] for v in f] for f in b2.facets]
    d = close_downward(facets, range(label))
    return AmalgamResult(
        d,
        Embedding.from_mapping(g1, Mode.STRONG),
        Embedding.from_mapping(g2, Mode.STRONG),
    )


def _gap_blocks(
    vertices: Iterable[int], shared: list[int]
) -> list[list[int]]:
    """Non-shared vertices grouped by how many shared ones precede them."""
    blocks: list[list[int]] = [[] for _ in range(len(shared) + 1)]
    marked = set(shared)
    for v in vertices:
        if v not in marked:
            blocks[sum(1 for s in shared if s < v)].append(v)
    return blocks


def extension_types(
    pattern: FiniteOrderedComplex, cls: ClassSpec
) -> list[ExtensionType]:
    """Every (position, link) a new vertex may take over ``pattern``."""
    k = cls.max_face_size
    bound = None if k is None else k - 1
    ambient = [
        m
        for m in pattern.face_masks
        if bound is None or m.bit_count() <= bound
    ]
    links = list(downsets(ambient, base=(0,), start=1, max_size=bound))
    return [
        (position, link)
        for position in range(len(pattern) + 1)
        for link in links
    ]


def _insert(
    pattern: FiniteOrderedComplex, position: int, link: frozenset[int]
) -> FiniteOrderedComplex:
    n = len(pattern)
    shift = [i if i < position else i + 1 for i in range(n)]

    def moved(mask: int) -> int:
        return sum(1 << shift[i] for i in mask_bits(mask))

    masks = [moved(m) for m in pattern.facet_masks]
    masks += [moved(u) | 1 << position for u in link]
    return FiniteOrderedComplex.from_masks(range(n + 1), masks)


def one_point_extensions(
    a: FiniteOrderedComplex, cls: ClassSpec
) -> list[OnePointExtension]:
    """Canonical members on ``|a| + 1`` vertices extending ``a`` by one."""
    cls.require(a)
    pattern = canonicalize(a)
    return [
        OnePointExtension(_insert(pattern, position, link), position)
        for position, link in extension_types(pattern, cls)
    ]


def realized_types(
    f: FiniteOrderedComplex, positions: tuple[int, ...]
) -> set[ExtensionType]:
    """Types of the vertices of ``f`` outside ``positions`` over them."""
    chosen = set(positions)
    local = list(submasks((1 << len(positions)) - 1)) + [0]
    spread = {
        u: sum(1 << positions[i] for i in mask_bits(u)) for u in local
    }
    found: set[ExtensionType] = set()
    for w in range(len(f)):
        if w in chosen:
            continue
        gap = sum(1 for p in positions if p < w)
        link = frozenset(
            u for u in local if f.has_mask(spread[u] | 1 << w)
        )
        found.add((gap, link))
    return found


def _gaps_with_room(
    f: FiniteOrderedComplex, positions: tuple[int, ...]
) -> set[int]:
    chosen = set(positions)
    return {
        sum(1 for p in positions if p < w)
        for w in range(len(f))
        if w not in chosen
    }


def _subsets(
    f: FiniteOrderedComplex, within: Iterable[int] | None, size: int
) -> Iterator[tuple[int, ...]]:
    if within is None:
        pool = list(range(len(f)))
    else:
        mask = f.mask_of_known(within)
        pool = mask_bits(mask)
    return combinations(pool, size)


def check_extension_property(
    f: FiniteOrderedComplex,
    cls: ClassSpec,
    s: int = 3,
    *,
    within: Iterable[int] | None = None,
    budget: SearchBudget | None = None,
) -> CheckReport:
    """Check that ``f`` realizes every one-point extension of its patterns.

    Patterns are the induced substructures of ``f`` on ``1..s`` vertices,
    restricted to the labels in ``within`` when given; the extending
    vertex may be any vertex of ``f``.
    """
    cls.require(f)
    if s < 1:
        raise InvalidInputError("pattern size must be positive", value=s)
    actual = resolve_budget(budget)
    scope = None if within is None else list(within)
    report = CheckReport("extension property")
    for size in range(1, s + 1):
        for positions in _subsets(f, scope, size):
            actual.tick()
            pattern = restrict_positions(f, sum(1 << p for p in positions))
            present = realized_types(f, positions)
            for position, link in extension_types(pattern, cls):
                report.checked += 1
                if (position, link) not in present:
                    report.fail(
                        pattern=[f.vertices[p] for p in positions],
                        position=position,
                        link=sorted(sorted(mask_bits(u)) for u in link),
                    )
    return report


def check_ultrahomogeneity_truncated(
    f: FiniteOrderedComplex,
    cls: ClassSpec,
    s: int = 2,
    *,
    within: Iterable[int] | None = None,
    budget: SearchBudget | None = None,
) -> CheckReport:
    """One-step extendability of isomorphisms between small substructures.

    For ordered complexes the isomorphism between two induced
    substructures ``X`` and ``Y`` of size below ``s`` is the unique order
    map. It must extend to any extra vertex ``x'``, unless the gap of
    ``Y`` where the image would go holds no vertex at all.
    """
    cls.require(f)
    actual = resolve_budget(budget)
    scope = None if within is None else list(within)
    report = CheckReport("ultrahomogeneity")
    for size in range(1, s):
        groups: dict[FiniteOrderedComplex, list[tuple[int, ...]]] = (
            defaultdict(list)
        )
        for positions in _subsets(f, scope, size):
            mask = sum(1 << p for p in positions)
            groups[canonicalize(restrict_positions(f, mask))].append(positions)
        for members in groups.values():
            types = {p: realized_types(f, p) for p in members}
            rooms = {p: _gaps_with_room(f, p) for p in members}
            for x, y in combinations(members, 2):
                for source, target in ((x, y), (y, x)):
                    actual.tick()
                    report.checked += 1
                    missing = [
                        t
                        for t in types[source] - types[target]
                        if t[0] in rooms[target]
                    ]
                    if missing:
                        position, link = min(
                            missing, key=lambda t: (t[0], sorted(t[1]))
                        )
                        report.fail(
                            source=[f.vertices[p] for p in source],
                            target=[f.vertices[p] for p in target],
                            position=position,
                            link=sorted(sorted(mask_bits(u)) for u in link),
                        )
    return report


def verify_class_axioms(
    cls: ClassSpec,
    n_max: int,
    *,
    settings: PolyramseySettings | None = None,
    budget: SearchBudget | None = None,
) -> CheckReport:
    """Exhaustive heredity, joint embedding and amalgamation up to ``n_max``.

    Isomorphism closure holds by construction: members are compared by
    canonical form.
    """
    actual_settings = settings or get_settings()
    k = cls.max_face_size
    guard = (
        actual_settings.axioms_max_bounded
        if k is not None and k <= 2
        else actual_settings.axioms_max_unbounded
    )
    if n_max > guard:
        raise ResourceLimitError("axiom check vertex count", guard)
    if n_max < 1:
        raise InvalidInputError("n_max must be positive", value=n_max)
    actual = resolve_budget(budget)
    report = CheckReport(f"class axioms ({cls.name})")
    members = {
        n: cls.members(n, settings=actual_settings)
        for n in range(1, n_max + 1)
    }
    known = {c for group in members.values() for c in group}
    everyone = [c for n in sorted(members) for c in members[n]]
    counts = {f"members_{n}": len(group) for n, group in members.items()}
    counts.update(heredity=0, joint_embedding=0, amalgamation=0)
    report.counts = counts

    for n, group in members.items():
        if not group:
            report.fail(axiom="cardinality", size=n)

    for c in everyone:
        for mask in submasks((1 << len(c)) - 1):
            actual.tick()
            counts["heredity"] += 1
            piece = canonicalize(restrict_positions(c, mask))
            if piece not in known:
                report.fail(
                    axiom="heredity",
                    complex=format_text(c),
                    subset=mask_bits(mask),
                )

    for a in everyone:
        for b in everyone:
            actual.tick()
            counts["joint_embedding"] += 1
            joint = joint_embed(a, b, cls)
            if not (
                cls.contains(joint.d)
                and is_embedding(joint.g_a.mapping, a, joint.d, Mode.STRONG)
                and is_embedding(joint.g_b.mapping, b, joint.d, Mode.STRONG)
            ):
                report.fail(
                    axiom="joint embedding",
                    a=format_text(a),
                    b=format_text(b),
                )

    for b1 in everyone:
        for mask in submasks((1 << len(b1)) - 1):
            a = canonicalize(restrict_positions(b1, mask))
            f1 = Embedding.from_mapping(
                {i: b1.vertices[p] for i, p in enumerate(mask_bits(mask))},
                Mode.STRONG,
            )
            for b2 in everyone:
                for f2 in enumerate_embeddings(
                    a, b2, Mode.STRONG, budget=actual
                ):
                    counts["amalgamation"] += 1
                    if not _amalgam_ok(a, b1, b2, f1, f2, cls):
                        report.fail(
                            axiom="amalgamation",
                            a=format_text(a),
                            b1=format_text(b1),
                            b2=format_text(b2),
                        )
    report.checked = (
        counts["heredity"] + counts["joint_embedding"] + counts["amalgamation"]
    )
    logger.info(
        "axioms for %s up to %d: %d checks, %d failures",
        cls.name,
        n_max,
        report.checked,
        report.failures,
    )
    return report


def _amalgam_ok(
    a: FiniteOrderedComplex,
    b1: FiniteOrderedComplex,
    b2: FiniteOrderedComplex,
    f1: Embedding,
    f2: Embedding,
    cls: ClassSpec,
) -> bool:
    result = amalgamate(a, b1, b2, f1, f2, cls)
    commutes = all(
        result.g1(f1(v)) == result.g2(f2(v)) for v in a.vertices
    )
    return (
        commutes
        and cls.contains(result.d)
        and is_embedding(result.g1.mapping, b1, result.d, Mode.STRONG)
        and is_embedding(result.g2.mapping, b2, result.d, Mode.STRONG)
    )
