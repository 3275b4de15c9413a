"""Coin-flip random polyhedra and embedding coverage statistics."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import anyio
import anyio.to_process
import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from polyramsey.complex import FiniteOrderedComplex, enumerate_class
from polyramsey.config import PolyramseySettings, get_settings
from polyramsey.embeddings import Mode, has_embedding
from polyramsey.exceptions import InvalidInputError, ResourceLimitError

logger = logging.getLogger(__name__)

SEED_BITS = 64


class GenParams(BaseModel):
    """Generator parameters; ``k = 0`` is the unbounded construction."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    p: float = Field(gt=0.0, lt=1.0)
    k: int = Field(default=0, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**SEED_BITS)

    @model_validator(mode="after")
    def _bounded_needs_two(self) -> GenParams:
        if self.k == 1:
            raise ValueError("k must be 0 (unbounded) or at least 2")
        return self

    @classmethod
    def build(cls, **values: object) -> GenParams:
        """Validate, reporting failures as invalid input."""
        try:
            return cls.model_validate(values)
        except ValidationError as exc:
            raise InvalidInputError(str(exc)) from exc

    @property
    def bounded(self) -> bool:
        return self.k >= 2


def flip_order(n: int, k: int = 0) -> Iterator[tuple[int, ...]]:
    """Subsets that get a coin: by size, then colexicographically."""
    sizes = [k] if k >= 2 else range(2, n + 1)
    for size in sizes:
        yield from sorted(
            combinations(range(n), size), key=lambda u: u[::-1]
        )


def random_polyhedron(
    params: GenParams,
    *,
    coins: Sequence[bool] | None = None,
    settings: PolyramseySettings | None = None,
) -> FiniteOrderedComplex:
    """Flip one coin per subset; the heads sets generate the family.

    ``coins`` replaces the generator's draws, in flip order.
    """
    actual = settings or get_settings()
    if not params.bounded and params.n > actual.unbounded_generation_max:
        raise ResourceLimitError(
            "unbounded generation vertex count",
            actual.unbounded_generation_max,
        )
    subsets = list(flip_order(params.n, params.k))
    if coins is None:
        rng = np.random.Generator(np.random.PCG64(params.seed))
        heads = rng.random(len(subsets)) < params.p
    else:
        if len(coins) < len(subsets):
            raise InvalidInputError(
                f"need {len(subsets)} coins, got {len(coins)}"
            )
        heads = np.asarray(coins[: len(subsets)], dtype=bool)
    masks = [
        sum(1 << v for v in u)
        for u, head in zip(subsets, heads, strict=True)
        if head
    ]
    return FiniteOrderedComplex.from_masks(range(params.n), masks)


def sample_seed(seed: int, index: int) -> int:
    """Per-sample seed derived from ``(seed, index)``."""
    state = np.random.SeedSequence((seed, index)).generate_state(
        1, dtype=np.uint64
    )
    return int(state[0])


def coverage_targets(s: int) -> list[FiniteOrderedComplex]:
    """Canonical complexes (unbounded class) on ``1..s`` vertices."""
    return [c for size in range(1, s + 1) for c in enumerate_class(size)]


@dataclass
class CoverageReport:
    samples: int
    targets: list[FiniteOrderedComplex]
    hits: list[int] = field(default_factory=list)

    @property
    def frequencies(self) -> list[float]:
        return [h / self.samples for h in self.hits]

    def frequency_of(self, target: FiniteOrderedComplex) -> float:
        return self.frequencies[self.targets.index(target)]


def sample_hits(params: GenParams, index: int, s: int) -> list[bool]:
    """Which coverage targets embed strongly into sample ``index``."""
    sample = random_polyhedron(
        params.model_copy(update={"seed": sample_seed(params.seed, index)})
    )
    return [has_embedding(t, sample, Mode.STRONG) for t in coverage_targets(s)]


def _check_coverage_args(s: int, samples: int) -> None:
    if not 1 <= s <= 3:
        raise InvalidInputError("target size must lie in 1..3", value=s)
    if samples < 1:
        raise InvalidInputError("need at least one sample", value=samples)


def _reduce(
    s: int, samples: int, rows: Sequence[Sequence[bool]]
) -> CoverageReport:
    targets = coverage_targets(s)
    hits = [sum(1 for row in rows if row[i]) for i in range(len(targets))]
    return CoverageReport(samples=samples, targets=targets, hits=hits)


def embedding_coverage_test(
    params: GenParams, s: int, samples: int
) -> CoverageReport:
    """Fraction of samples admitting a strong embedding of each target."""
    _check_coverage_args(s, samples)
    rows = [sample_hits(params, index, s) for index in range(samples)]
    report = _reduce(s, samples, rows)
    logger.info("coverage over %d samples: %s", samples, report.frequencies)
    return report


async def embedding_coverage_async(
    params: GenParams,
    s: int,
    samples: int,
    workers: int | None = None,
) -> CoverageReport:
    """Same report as :func:`embedding_coverage_test`, samples in processes.

    Rows are stored by sample index, so the result does not depend on the
    completion order.
    """
    _check_coverage_args(s, samples)
    limiter = anyio.CapacityLimiter(workers or get_settings().workers)
    rows: list[list[bool]] = [[] for _ in range(samples)]

    async def run(index: int) -> None:
        rows[index] = await anyio.to_process.run_sync(
            sample_hits, params, index, s, limiter=limiter
        )

    async with anyio.create_task_group() as tg:
        for index in range(samples):
            tg.start_soon(run, index)
    return _reduce(s, samples, rows)
