"""Finite ordered complexes and the restriction/approximation calculus.

A complex is a pair ``(x, S_x)``: a strictly increasing tuple of natural
labels and a hereditary face family over it whose union is ``x``. Only the
facets (maximal faces) are stored. Internally faces are handled as bit
masks over vertex *positions*, so ``1 << i`` stands for ``vertices[i]``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING

from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.exceptions import (
    HorizonExceededError,
    InvalidInputError,
    ResourceLimitError,
)

if TYPE_CHECKING:
    from polyramsey.budget import SearchBudget
    from polyramsey.protocols import ComplexOracle

logger = logging.getLogger(__name__)

Face = frozenset[int]


def face_key(face: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key for faces: by size, then colexicographically."""
    ordered = tuple(sorted(face, reverse=True))
    return (len(ordered), ordered)


def submasks(mask: int) -> Iterator[int]:
    """Yield every nonempty submask of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """Return the inclusion-maximal masks, largest first."""
    kept: list[int] = []
    for mask in sorted(set(masks), key=lambda m: (-m.bit_count(), m)):
        if mask and not any(mask & ~other == 0 for other in kept):
            kept.append(mask)
    return kept


@dataclass(frozen=True)
class FiniteOrderedComplex:
    """A finite ordered polyhedron stored by its facets.

    Equality is literal: labels matter. Use :func:`canonicalize` to compare
    up to order isomorphism.
    """

    vertices: tuple[int, ...]
    facets: tuple[Face, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        if any(v < 0 for v in vertices):
            raise InvalidInputError("vertex labels must be naturals")
        if any(a >= b for a, b in zip(vertices, vertices[1:], strict=False)):
            raise InvalidInputError(
                "vertices must be strictly increasing", value=vertices
            )
        universe = set(vertices)
        facets = tuple(
            sorted((frozenset(f) for f in self.facets), key=face_key)
        )
        covered: set[int] = set()
        for facet in facets:
            if not facet:
                raise InvalidInputError("the empty face is never stored")
            if not facet <= universe:
                raise InvalidInputError(
                    "facet uses labels outside the vertex set",
                    value=sorted(facet),
                )
            covered |= facet
        if covered != universe:
            raise InvalidInputError(
                "facets must cover every vertex", value=sorted(universe)
            )
        for i, first in enumerate(facets):
            for second in facets[i + 1 :]:
                if first <= second or second <= first:
                    raise InvalidInputError(
                        "facets must be pairwise incomparable",
                        value=(sorted(first), sorted(second)),
                    )
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "facets", facets)

    @classmethod
    def from_masks(
        cls, vertices: Sequence[int], masks: Iterable[int]
    ) -> FiniteOrderedComplex:
        """Build from position masks, skipping validation.

        ``masks`` may contain non-maximal faces; singletons are added.
        """
        labels = tuple(vertices)
        full = [*masks, *(1 << i for i in range(len(labels)))]
        facets = tuple(
            sorted(
                (
                    frozenset(labels[i] for i in _bits(mask))
                    for mask in maximal_masks(full)
                ),
                key=face_key,
            )
        )
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", labels)
        object.__setattr__(obj, "facets", facets)
        return obj

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def max_vertex(self) -> int:
        if not self.vertices:
            raise InvalidInputError("the empty complex has no maximum")
        return self.vertices[-1]

    @cached_property
    def position(self) -> dict[int, int]:
        """Label to position map."""
        return {label: i for i, label in enumerate(self.vertices)}

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(self.mask_of_known(f) for f in self.facets)

    @cached_property
    def face_masks(self) -> frozenset[int]:
        """Every nonempty face as a position mask."""
        found: set[int] = set()
        for facet in self.facet_masks:
            if facet not in found:
                found.update(submasks(facet))
        return frozenset(found)

    def mask_of(self, labels: Iterable[int]) -> int | None:
        """Position mask of ``labels`` or None if one is not a vertex."""
        mask = 0
        for label in labels:
            pos = self.position.get(label)
            if pos is None:
                return None
            mask |= 1 << pos
        return mask

    def mask_of_known(self, labels: Iterable[int]) -> int:
        mask = self.mask_of(labels)
        if mask is None:
            raise InvalidInputError(
                "labels are not vertices of the complex", value=labels
            )
        return mask

    def labels_of(self, mask: int) -> Face:
        return frozenset(self.vertices[i] for i in _bits(mask))

    def has_mask(self, mask: int) -> bool:
        return not mask or any(mask & ~f == 0 for f in self.facet_masks)

    def has_face(self, face: Iterable[int]) -> bool:
        """Membership in S_x; the empty face belongs to every family."""
        mask = self.mask_of(face)
        return mask is not None and self.has_mask(mask)

    def faces(self, *, include_empty: bool = False) -> list[Face]:
        """Materialize the face family sorted by size then colex."""
        family = [self.labels_of(mask) for mask in self.face_masks]
        if include_empty:
            family.append(frozenset())
        return sorted(family, key=face_key)

    @property
    def face_count(self) -> int:
        return len(self.face_masks)

    def relabel(self, mapping: dict[int, int]) -> FiniteOrderedComplex:
        """Apply an order-preserving relabeling of the vertices."""
        images = tuple(mapping[v] for v in self.vertices)
        if any(a >= b for a, b in zip(images, images[1:], strict=False)):
            raise InvalidInputError("relabeling must preserve the order")
        return FiniteOrderedComplex.from_masks(images, self.facet_masks)

    def __str__(self) -> str:
        return format_text(self)


def _bits(mask: int) -> Iterator[int]:
    pos = 0
    while mask:
        if mask & 1:
            yield pos
        mask >>= 1
        pos += 1


def mask_bits(mask: int) -> list[int]:
    """Positions set in ``mask``, ascending."""
    return list(_bits(mask))


EMPTY = FiniteOrderedComplex((), ())


def full_simplex(labels: Iterable[int]) -> FiniteOrderedComplex:
    """The simplex whose only facet is the whole vertex set."""
    vertices = sorted(set(labels))
    return close_downward([vertices] if vertices else [], vertices)


def pure_set(labels: Iterable[int]) -> FiniteOrderedComplex:
    """The pair ``(A, A^[<=1])``: only singleton faces."""
    return close_downward([], labels)


def bounded_full(labels: Iterable[int], k: int) -> FiniteOrderedComplex:
    """The pair ``(A, A^[<=k])``."""
    if k < 1:
        raise InvalidInputError("face-size bound must be positive", value=k)
    vertices = sorted(set(labels))
    if len(vertices) <= k:
        return full_simplex(vertices)
    return close_downward(combinations(vertices, k), vertices)


def close_downward(
    facet_list: Iterable[Iterable[int]], vertex_set: Iterable[int]
) -> FiniteOrderedComplex:
    """Downward closure of ``facet_list`` plus all singletons."""
    vertices = sorted(set(vertex_set))
    position = {label: i for i, label in enumerate(vertices)}
    masks = []
    for listed in facet_list:
        mask = 0
        for label in listed:
            if label not in position:
                raise InvalidInputError(
                    "listed set leaves the vertex set", value=sorted(listed)
                )
            mask |= 1 << position[label]
        masks.append(mask)
    if any(v < 0 for v in vertices):
        raise InvalidInputError("vertex labels must be naturals")
    return FiniteOrderedComplex.from_masks(vertices, masks)


def restrict(c: FiniteOrderedComplex, y: Iterable[int]) -> FiniteOrderedComplex:
    """Return ``(y, S_c|y)`` where ``S|y = {u & y : u in S}``."""
    subset = sorted(set(y))
    keep = c.mask_of(subset)
    if keep is None:
        raise InvalidInputError(
            "restriction set is not inside the vertex set", value=subset
        )
    return _restrict_mask(c, keep)


def _restrict_mask(c: FiniteOrderedComplex, keep: int) -> FiniteOrderedComplex:
    positions = mask_bits(keep)
    labels = [c.vertices[i] for i in positions]
    squeeze = {old: new for new, old in enumerate(positions)}
    masks = []
    for facet in c.facet_masks:
        trace = facet & keep
        if trace:
            masks.append(
                sum(1 << squeeze[i] for i in _bits(trace))
            )
    return FiniteOrderedComplex.from_masks(labels, masks)


def restrict_positions(
    c: FiniteOrderedComplex, positions: int
) -> FiniteOrderedComplex:
    """Restriction to the vertices at the positions set in a mask."""
    return _restrict_mask(c, positions)


def approx(
    src: FiniteOrderedComplex | ComplexOracle, n: int
) -> FiniteOrderedComplex:
    """The ``n``-th approximation: restriction to the first ``n`` vertices."""
    if n < 0:
        raise InvalidInputError("approximation length must be natural")
    if isinstance(src, FiniteOrderedComplex):
        if n > len(src):
            raise InvalidInputError(
                f"cannot take r_{n} of a complex with {len(src)} vertices"
            )
        return _restrict_mask(src, (1 << n) - 1)
    return src.truncate(n)


def _leq_finite(c1: FiniteOrderedComplex, c2: FiniteOrderedComplex) -> bool:
    if not set(c1.vertices) <= set(c2.vertices):
        return False
    return all(c2.has_face(f) for f in c1.facets)


def available_truncation(
    src: FiniteOrderedComplex | ComplexOracle, n: int
) -> FiniteOrderedComplex:
    """The first ``n`` vertices, or as many as ``src`` can provide."""
    if isinstance(src, FiniteOrderedComplex):
        return approx(src, min(n, len(src)))
    try:
        return src.truncate(n)
    except HorizonExceededError as exc:
        logger.warning(
            "oracle holds %d vertices, %d requested", exc.available, n
        )
        return src.truncate(exc.available)


def _truncation_covering(
    oracle: ComplexOracle, label: int, horizon: int
) -> FiniteOrderedComplex:
    for n in range(horizon):
        try:
            reached = oracle.label(n) >= label
        except HorizonExceededError:
            return available_truncation(oracle, n)
        if reached:
            return oracle.truncate(n + 1)
    return available_truncation(oracle, horizon)


def leq(
    c1: FiniteOrderedComplex | ComplexOracle,
    c2: FiniteOrderedComplex | ComplexOracle,
    *,
    horizon: int | None = None,
) -> bool:
    """``(y, S_y) <= (x, S_x)`` iff ``y`` lies in ``x`` and ``S_y`` in ``S_x``.

    An oracle on the left is compared through its truncation at
    ``horizon``; an oracle on the right through its shortest truncation
    reaching the left side's maximum label. Oracles known only up to a
    shorter length are compared on what they hold.
    """
    if isinstance(c1, FiniteOrderedComplex) and isinstance(
        c2, FiniteOrderedComplex
    ):
        return _leq_finite(c1, c2)
    settings = get_settings()
    levels = horizon if horizon is not None else settings.leq_horizon
    left = (
        c1
        if isinstance(c1, FiniteOrderedComplex)
        else available_truncation(c1, levels)
    )
    if isinstance(c2, FiniteOrderedComplex):
        return _leq_finite(left, c2)
    if left.is_empty:
        return True
    scan = max(settings.depth_horizon, len(left))
    right = _truncation_covering(c2, left.max_vertex, scan)
    return _leq_finite(left, right)


def leq_fin(c1: FiniteOrderedComplex, c2: FiniteOrderedComplex) -> bool:
    """``<=`` plus equal maximum labels."""
    if c1.is_empty or c2.is_empty:
        raise InvalidInputError("leq_fin needs nonempty complexes")
    return c1.max_vertex == c2.max_vertex and _leq_finite(c1, c2)


def initial_segment(
    c1: FiniteOrderedComplex, c2: FiniteOrderedComplex
) -> bool:
    """``c1``'s vertices start ``c2``'s and ``c1 <= c2``."""
    return c2.vertices[: len(c1)] == c1.vertices and _leq_finite(c1, c2)


def canonicalize(c: FiniteOrderedComplex) -> FiniteOrderedComplex:
    """Relabel onto ``0..n-1`` keeping the order."""
    return FiniteOrderedComplex.from_masks(range(len(c)), c.facet_masks)


def downsets(
    ambient: Iterable[int],
    *,
    base: Iterable[int] = (0,),
    start: int = 1,
    max_size: int | None = None,
) -> Iterator[frozenset[int]]:
    """Enumerate hereditary subfamilies of an ambient family of masks.

    ``base`` is always included (it must itself be hereditary) and faces
    are chosen level by level from size ``start`` upward: a face is a
    candidate once all its one-smaller subfaces were chosen. The order is
    deterministic: lower levels vary slowest.
    """
    by_size: dict[int, list[int]] = {}
    for mask in sorted(set(ambient)):
        by_size.setdefault(mask.bit_count(), []).append(mask)
    top = max(by_size, default=0)
    if max_size is not None:
        top = min(top, max_size)

    def grow(chosen: frozenset[int], size: int) -> Iterator[frozenset[int]]:
        if size > top:
            yield chosen
            return
        candidates = [
            mask
            for mask in by_size.get(size, [])
            if all(mask & ~(1 << i) in chosen for i in _bits(mask))
        ]
        if not candidates:
            yield chosen
            return
        for pick in range(1 << len(candidates)):
            layer = [c for i, c in enumerate(candidates) if pick >> i & 1]
            if not layer:
                # an empty level blocks every larger size
                yield chosen
                continue
            yield from grow(chosen | frozenset(layer), size + 1)

    yield from grow(frozenset(base), start)


def enumerate_subcomplexes(
    c: FiniteOrderedComplex,
    *,
    max_face_size: int | None = None,
    budget: SearchBudget | None = None,
) -> Iterator[FiniteOrderedComplex]:
    """All complexes on ``c``'s vertices whose family lies inside ``c``'s."""
    singletons = [1 << i for i in range(len(c))]
    for chosen in downsets(
        c.face_masks,
        base=[0, *singletons],
        start=2,
        max_size=max_face_size,
    ):
        if budget is not None:
            budget.tick()
        yield FiniteOrderedComplex.from_masks(c.vertices, chosen)


def enumerate_class(
    n: int,
    k: int | None = None,
    *,
    settings: PolyramseySettings | None = None,
    budget: SearchBudget | None = None,
) -> list[FiniteOrderedComplex]:
    """All canonical complexes on ``0..n-1`` with faces of size at most ``k``.

    ``k=None`` is the unbounded class.
    """
    actual = settings or get_settings()
    if n < 0:
        raise InvalidInputError("vertex count must be natural", value=n)
    if k is not None and k < 1:
        raise InvalidInputError("face-size bound must be positive", value=k)
    guard = (
        actual.enumerate_max_bounded
        if k is not None and k <= 2
        else actual.enumerate_max_unbounded
    )
    if n > guard:
        raise ResourceLimitError("enumeration vertex count", guard)
    if n == 0:
        return [EMPTY]
    ambient = full_simplex(range(n)) if k is None else bounded_full(range(n), k)
    found = list(enumerate_subcomplexes(ambient, budget=budget))
    logger.debug("enumerated %d complexes on %d vertices", len(found), n)
    return found


def fin_down_set(a: FiniteOrderedComplex) -> list[FiniteOrderedComplex]:
    """Every ``b`` with ``leq_fin(b, a)``; always a finite set."""
    if a.is_empty:
        raise InvalidInputError("leq_fin needs a nonempty complex")
    top = 1 << (len(a) - 1)
    found: list[FiniteOrderedComplex] = []
    for rest in range(top):
        sub = _restrict_mask(a, rest | top)
        found.extend(enumerate_subcomplexes(sub))
    return found


def format_text(c: FiniteOrderedComplex) -> str:
    """One-line text form, e.g. ``V: 0 1 2 | F: 0,1 1,2``."""
    vertices = " ".join(str(v) for v in c.vertices)
    facets = " ".join(",".join(str(v) for v in sorted(f)) for f in c.facets)
    return f"V: {vertices} | F: {facets}".replace("  ", " ").rstrip()


def parse_text(text: str) -> FiniteOrderedComplex:
    """Parse the one-line text form; facets may be omitted."""
    head, _, tail = text.strip().partition("|")
    head = head.strip()
    if not head.startswith("V:"):
        raise InvalidInputError("text complex must start with 'V:'", value=text)
    try:
        vertices = [int(tok) for tok in head[2:].split()]
        facets: list[list[int]] = []
        tail = tail.strip()
        if tail:
            if not tail.startswith("F:"):
                raise InvalidInputError(
                    "facet part must start with 'F:'", value=text
                )
            facets = [
                [int(v) for v in tok.split(",")] for tok in tail[2:].split()
            ]
    except ValueError as exc:
        raise InvalidInputError(f"bad label in {text!r}") from exc
    return close_downward(facets, vertices)
