"""Order-preserving embeddings and copy enumeration."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from enum import StrEnum

from polyramsey.budget import SearchBudget, resolve_budget
from polyramsey.complex import (
    FiniteOrderedComplex,
    full_simplex,
    restrict_positions,
    submasks,
)
from polyramsey.exceptions import InvalidInputError

logger = logging.getLogger(__name__)


class Mode(StrEnum):
    """``weak``: faces map to faces. ``strong``: the image is induced."""

    WEAK = "weak"
    STRONG = "strong"


@dataclass(frozen=True)
class Embedding:
    """An order-preserving vertex map tagged with its mode."""

    pairs: tuple[tuple[int, int], ...]
    mode: Mode

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[int, int], mode: Mode
    ) -> Embedding:
        return cls(tuple(sorted(mapping.items())), Mode(mode))

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(target for _, target in self.pairs)

    def __call__(self, label: int) -> int:
        return self.mapping[label]


def is_embedding(
    f: Mapping[int, int],
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    mode: Mode | str,
) -> bool:
    """Check the order, face and (strong mode) induced-face conditions."""
    mode = Mode(mode)
    if set(f) != set(a.vertices):
        raise InvalidInputError("vertex map must be total on the source")
    images = [f[v] for v in a.vertices]
    if len(set(images)) != len(images):
        raise InvalidInputError("vertex map is not injective", value=images)
    if any(t not in b.position for t in images):
        raise InvalidInputError("vertex map leaves the target", value=images)
    if any(x >= y for x, y in zip(images, images[1:], strict=False)):
        return False
    if not all(b.has_face(f[v] for v in facet) for facet in a.facets):
        return False
    if mode is Mode.WEAK:
        return True
    back = {target: source for source, target in f.items()}
    traced = restrict_positions(b, b.mask_of_known(images))
    return all(a.has_face(back[t] for t in facet) for facet in traced.facets)


def _search(
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    mode: Mode,
    budget: SearchBudget,
) -> Iterator[tuple[int, ...]]:
    """Yield target position tuples in lexicographic order."""
    n, m = len(a), len(b)
    if n > m:
        return
    strong = mode is Mode.STRONG
    targets: list[int] = []
    images: dict[int, int] = {0: 0}

    def consistent(i: int, p: int) -> bool:
        bit = 1 << i
        fresh: dict[int, int] = {}
        for rest in (*submasks(bit - 1), 0):
            mask = rest | bit
            image = images[rest] | 1 << p
            fresh[mask] = image
            in_a = a.has_mask(mask)
            if in_a and not b.has_mask(image):
                return False
            if strong and not in_a and b.has_mask(image):
                return False
        images.update(fresh)
        return True

    def extend(i: int, low: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(targets)
            return
        for p in range(low, m - (n - i) + 1):
            budget.tick()
            if not consistent(i, p):
                continue
            targets.append(p)
            yield from extend(i + 1, p + 1)
            targets.pop()

    yield from extend(0, 0)


def _to_embedding(
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    positions: tuple[int, ...],
    mode: Mode,
) -> Embedding:
    return Embedding(
        tuple(
            (v, b.vertices[p])
            for v, p in zip(a.vertices, positions, strict=True)
        ),
        mode,
    )


def enumerate_embeddings(
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    mode: Mode | str,
    *,
    budget: SearchBudget | None = None,
) -> list[Embedding]:
    """All embeddings of ``a`` into ``b``, lexicographic in the map."""
    mode = Mode(mode)
    found = [
        _to_embedding(a, b, positions, mode)
        for positions in _search(a, b, mode, resolve_budget(budget))
    ]
    logger.debug(
        "%d %s embeddings of %d into %d vertices",
        len(found),
        mode,
        len(a),
        len(b),
    )
    return found


def has_embedding(
    a: FiniteOrderedComplex,
    b: FiniteOrderedComplex,
    mode: Mode | str,
    *,
    budget: SearchBudget | None = None,
) -> bool:
    """Whether at least one embedding exists; stops at the first hit."""
    search = _search(a, b, Mode(mode), resolve_budget(budget))
    return next(search, None) is not None


def enumerate_copies(
    b: FiniteOrderedComplex,
    a: FiniteOrderedComplex,
    mode: Mode | str,
    *,
    budget: SearchBudget | None = None,
) -> list[FiniteOrderedComplex]:
    """Copies of ``a`` inside ``b``.

    An order-preserving map is fixed by its image, so copies and
    embeddings correspond one to one. Strong copies are induced
    restrictions of ``b``; weak copies carry ``a``'s family moved onto the
    image.
    """
    mode = Mode(mode)
    copies = []
    for positions in _search(a, b, mode, resolve_budget(budget)):
        if mode is Mode.STRONG:
            copies.append(
                restrict_positions(b, sum(1 << p for p in positions))
            )
        else:
            moved = {
                v: b.vertices[p]
                for v, p in zip(a.vertices, positions, strict=True)
            }
            copies.append(a.relabel(moved))
    return copies


def simplex_embed(c: FiniteOrderedComplex) -> Embedding:
    """The inclusion of ``c`` into the full simplex on ``0..max(c)``."""
    if c.is_empty:
        raise InvalidInputError("the empty complex has no ambient simplex")
    return Embedding(tuple((v, v) for v in c.vertices), Mode.WEAK)


def simplex_target(c: FiniteOrderedComplex) -> FiniteOrderedComplex:
    """The codomain used by :func:`simplex_embed`."""
    return full_simplex(range(c.max_vertex + 1))


def identity(c: FiniteOrderedComplex, mode: Mode | str) -> Embedding:
    return Embedding(tuple((v, v) for v in c.vertices), Mode(mode))


def compose(first: Embedding, second: Embedding) -> Embedding:
    """``second`` after ``first``; weak if either one is weak."""
    outer = second.mapping
    missing = [t for t in first.image if t not in outer]
    if missing:
        raise InvalidInputError(
            "embeddings do not compose: image leaves the domain",
            value=missing,
        )
    mode = (
        Mode.STRONG
        if first.mode is Mode.STRONG and second.mode is Mode.STRONG
        else Mode.WEAK
    )
    return Embedding(tuple((s, outer[t]) for s, t in first.pairs), mode)
