"""Finitely presented infinite complexes and the depth function."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, ClassVar

import numpy as np
from pydantic import ValidationError

from polyramsey.complex import (
    FiniteOrderedComplex,
    approx,
    bounded_full,
    full_simplex,
    pure_set,
)
from polyramsey.config import get_settings
from polyramsey.exceptions import (
    ConfigurationError,
    HorizonExceededError,
    InvalidInputError,
)
from polyramsey.protocols import ComplexOracle

logger = logging.getLogger(__name__)


def _naturals(face: Iterable[int]) -> list[int] | None:
    labels = sorted(set(face))
    if labels and labels[0] < 0:
        return None
    return labels


def _int_param(params: Mapping[str, Any], name: str, default: int) -> int:
    raw = params.get(name, default)
    try:
        return int(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(
            f"parameter {name!r} must be an integer"
        ) from exc


@dataclass(frozen=True)
class FullSimplexOracle:
    """The simplex on ℕ: every finite set is a face."""

    kind: ClassVar[str] = "full-simplex"

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> FullSimplexOracle:
        return cls()

    def label(self, index: int) -> int:
        return index

    def truncate(self, n: int) -> FiniteOrderedComplex:
        return full_simplex(range(n))

    def has_face(self, face: Iterable[int]) -> bool:
        return _naturals(face) is not None

    def header(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": {}}


@dataclass(frozen=True)
class BoundedFullOracle:
    """``(ℕ, ℕ^[<=k])``."""

    k: int
    kind: ClassVar[str] = "k-bounded-full"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ConfigurationError("k-bounded-full needs k >= 1")

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> BoundedFullOracle:
        if "k" not in params:
            raise ConfigurationError("k-bounded-full needs parameter 'k'")
        return cls(k=_int_param(params, "k", 0))

    def label(self, index: int) -> int:
        return index

    def truncate(self, n: int) -> FiniteOrderedComplex:
        return bounded_full(range(n), self.k)

    def has_face(self, face: Iterable[int]) -> bool:
        labels = _naturals(face)
        return labels is not None and len(labels) <= self.k

    def header(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": {"k": self.k}}


@dataclass(frozen=True)
class PureSetOracle:
    """The Ellentuck pair ``(A, A^[<=1])`` for ``A = {start + i*step}``."""

    start: int = 0
    step: int = 1
    kind: ClassVar[str] = "pure-set"

    def __post_init__(self) -> None:
        if self.start < 0 or self.step < 1:
            raise ConfigurationError("pure-set needs start >= 0 and step >= 1")

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> PureSetOracle:
        return cls(
            start=_int_param(params, "start", 0),
            step=_int_param(params, "step", 1),
        )

    def label(self, index: int) -> int:
        return self.start + index * self.step

    def truncate(self, n: int) -> FiniteOrderedComplex:
        return pure_set(self.label(i) for i in range(n))

    def is_vertex(self, label: int) -> bool:
        return label >= self.start and (label - self.start) % self.step == 0

    def has_face(self, face: Iterable[int]) -> bool:
        labels = _naturals(face)
        if labels is None or len(labels) > 1:
            return False
        return all(self.is_vertex(v) for v in labels)

    def header(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": {"start": self.start, "step": self.step},
        }


@dataclass(frozen=True)
class RandomStreamOracle:
    """A seeded random complex on ℕ.

    Every set ``u`` with at least two elements owns a coin drawn from
    ``SeedSequence((seed, *u))``; ``u`` is a face when all its subsets of
    size two or more came up heads. Coins depend on ``u`` alone, so every
    truncation is the restriction of every longer one.
    """

    seed: int
    p: float = 0.5
    k: int = 0
    kind: ClassVar[str] = "seeded-random-stream"
    _coins: dict[tuple[int, ...], bool] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ConfigurationError("seed must be a natural number")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigurationError("bias p must lie in [0, 1]")
        if self.k < 0:
            raise ConfigurationError("k must be natural (0 = unbounded)")

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> RandomStreamOracle:
        if "seed" not in params:
            raise ConfigurationError("seeded-random-stream needs 'seed'")
        try:
            p = float(params.get("p", 0.5))
        except (TypeError, ValueError) as exc:
            raise ConfigurationError("parameter 'p' must be a number") from exc
        return cls(
            seed=_int_param(params, "seed", 0),
            p=p,
            k=_int_param(params, "k", 0),
        )

    def coin(self, face: Sequence[int]) -> bool:
        key = tuple(face)
        cached = self._coins.get(key)
        if cached is None:
            sequence = np.random.SeedSequence((self.seed, *key))
            rng = np.random.default_rng(sequence)
            cached = bool(rng.random() < self.p)
            self._coins[key] = cached
        return cached

    def label(self, index: int) -> int:
        return index

    def truncate(self, n: int) -> FiniteOrderedComplex:
        faces: set[tuple[int, ...]] = {(v,) for v in range(n)}
        level = list(combinations(range(n), 2))
        size = 2
        while level and (not self.k or size <= self.k):
            kept = [
                u
                for u in level
                if all(sub in faces for sub in combinations(u, size - 1))
                and self.coin(u)
            ]
            faces.update(kept)
            size += 1
            level = _grow(kept)
        mapped = [sum(1 << v for v in u) for u in faces]
        return FiniteOrderedComplex.from_masks(range(n), mapped)

    def has_face(self, face: Iterable[int]) -> bool:
        labels = _naturals(face)
        if labels is None:
            return False
        if self.k and len(labels) > self.k:
            return False
        return all(
            self.coin(sub)
            for size in range(2, len(labels) + 1)
            for sub in combinations(labels, size)
        )

    def header(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": {"seed": self.seed, "p": self.p, "k": self.k},
        }


def _grow(level: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Candidates one size up whose prefix and suffix lie in ``level``."""
    present = set(level)
    grown: set[tuple[int, ...]] = set()
    for first in level:
        for second in level:
            if first[:-1] == second[:-1] and first[-1] < second[-1]:
                candidate = (*first, second[-1])
                if candidate[1:] in present:
                    grown.add(candidate)
    return sorted(grown)


@dataclass(frozen=True)
class TruncationFileOracle:
    """An oracle known only through explicitly listed truncations."""

    truncations: tuple[FiniteOrderedComplex, ...]
    source: str | None = None
    kind: ClassVar[str] = "explicit-truncation-file"

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.truncations, key=len))
        if not ordered:
            raise ConfigurationError(
                "explicit-truncation-file needs a truncation"
            )
        longest = ordered[-1]
        for shorter in ordered[:-1]:
            if approx(longest, len(shorter)) != shorter:
                raise ConfigurationError(
                    f"truncation with {len(shorter)} vertices is not an "
                    "initial approximation of the longest one"
                )
        object.__setattr__(self, "truncations", ordered)

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> TruncationFileOracle:
        # deferred: schemas imports this module
        from polyramsey.schemas import ComplexPayload

        raw = params.get("truncations")
        if not isinstance(raw, list):
            raise ConfigurationError(
                "explicit-truncation-file needs 'truncations'"
            )
        try:
            complexes = tuple(
                ComplexPayload.model_validate(item).to_complex()
                for item in raw
            )
        except ValidationError as exc:
            raise ConfigurationError(f"malformed truncation: {exc}") from exc
        source = params.get("source")
        return cls(truncations=complexes, source=source)

    @property
    def longest(self) -> FiniteOrderedComplex:
        return self.truncations[-1]

    def label(self, index: int) -> int:
        if index >= len(self.longest):
            raise HorizonExceededError(index + 1, len(self.longest))
        return self.longest.vertices[index]

    def truncate(self, n: int) -> FiniteOrderedComplex:
        if n > len(self.longest):
            raise HorizonExceededError(n, len(self.longest))
        return approx(self.longest, n)

    def has_face(self, face: Iterable[int]) -> bool:
        labels = _naturals(face)
        if labels is None:
            return False
        if labels and not self.longest.is_empty:
            if labels[-1] > self.longest.max_vertex:
                raise HorizonExceededError(
                    len(self.longest) + 1, len(self.longest)
                )
        elif labels:
            raise HorizonExceededError(1, 0)
        return self.longest.has_face(labels)

    def header(self) -> dict[str, Any]:
        params: dict[str, Any] = {"length": len(self.longest)}
        if self.source is not None:
            params["source"] = self.source
        return {"kind": self.kind, "params": params}


@dataclass(frozen=True)
class Depth:
    """A depth value; ``None`` stands for undefined."""

    value: int | None

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return "undefined" if self.value is None else str(self.value)


UNDEFINED = Depth(None)


def depth(
    a: FiniteOrderedComplex,
    big: ComplexOracle | FiniteOrderedComplex,
    *,
    horizon: int | None = None,
) -> Depth:
    """Least ``n`` with ``a <=_fin r_n(big)``, or undefined.

    ``max(a)`` pins ``n`` down to one candidate: the position of that label
    in ``big``'s vertex stream, plus one. The stream is scanned up to
    ``horizon`` vertices.
    """
    if a.is_empty:
        raise InvalidInputError("depth needs a nonempty complex")
    top = a.max_vertex
    if isinstance(big, FiniteOrderedComplex):
        position = big.position.get(top)
        if position is None:
            return UNDEFINED
        if all(big.has_face(f) for f in a.facets):
            return Depth(position + 1)
        return UNDEFINED

    limit = horizon if horizon is not None else get_settings().depth_horizon
    found: int | None = None
    try:
        for index in range(limit):
            current = big.label(index)
            if current == top:
                found = index + 1
                break
            if current > top:
                return UNDEFINED
        else:
            logger.warning(
                "depth horizon %d exhausted before label %d", limit, top
            )
            return UNDEFINED
    except HorizonExceededError as exc:
        logger.warning(
            "oracle ends after %d vertices, label %d not reached",
            exc.available,
            top,
        )
        return UNDEFINED
    if all(big.has_face(f) for f in a.facets):
        return Depth(found)
    return UNDEFINED
