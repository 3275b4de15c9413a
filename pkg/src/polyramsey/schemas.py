"""JSON payloads for complexes, oracles and check reports."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, ValidationError

from polyramsey.arrow import ArrowInstance, ArrowResult, SearchMinResult
from polyramsey.complex import (
    FiniteOrderedComplex,
    close_downward,
    parse_text,
)
from polyramsey.embeddings import Embedding, Mode
from polyramsey.exceptions import InvalidInputError
from polyramsey.fraisse import AmalgamResult, CheckReport
from polyramsey.limit import DemandRecord, LimitBuild, LimitSnapshot
from polyramsey.oracles import Depth
from polyramsey.randgen import CoverageReport, GenParams
from polyramsey.space import PigeonholeResult, SpaceRamseyResult


class ComplexPayload(BaseModel):
    """``{"vertices": [...], "facets": [[...], ...]}``.

    Listed facets are closed downward on load, so a non-antichain list is
    accepted and normalized.
    """

    vertices: list[int]
    facets: list[list[int]] = Field(default_factory=list)

    @classmethod
    def from_complex(cls, c: FiniteOrderedComplex) -> ComplexPayload:
        return cls(
            vertices=list(c.vertices),
            facets=[sorted(f) for f in c.facets],
        )

    def to_complex(self) -> FiniteOrderedComplex:
        return close_downward(self.facets, self.vertices)


def parse_complex(text: str) -> FiniteOrderedComplex:
    """A complex in JSON or in the one-line text form."""
    stripped = text.strip()
    if not stripped.startswith("{"):
        return parse_text(stripped)
    try:
        return ComplexPayload.model_validate_json(stripped).to_complex()
    except ValidationError as exc:
        raise InvalidInputError(f"malformed complex: {exc}") from exc


class OracleFile(BaseModel):
    """Oracle file: a ``{kind, params}`` header plus optional truncations."""

    kind: str
    params: dict[str, Any] = Field(default_factory=dict)
    truncations: list[ComplexPayload] = Field(default_factory=list)


class EmbeddingPayload(BaseModel):
    mode: Mode
    pairs: list[tuple[int, int]]

    @classmethod
    def from_embedding(cls, f: Embedding) -> EmbeddingPayload:
        return cls(mode=f.mode, pairs=list(f.pairs))

    def to_embedding(self) -> Embedding:
        return Embedding.from_mapping(dict(self.pairs), self.mode)


class DepthPayload(BaseModel):
    depth: int | None
    defined: bool

    @classmethod
    def from_depth(cls, value: Depth) -> DepthPayload:
        return cls(depth=value.value, defined=value.defined)


class ArrowResultPayload(BaseModel):
    """Arrow verdict; the counterexample colors copies of A in order."""

    holds: bool
    method: str
    copies: int
    targets: int
    nodes: int
    elapsed: float
    counterexample: list[int] | None = None
    a_copies: list[ComplexPayload] = Field(default_factory=list)
    witness_map: list[int] | None = None

    @classmethod
    def from_result(
        cls,
        result: ArrowResult,
        instance: ArrowInstance | None = None,
    ) -> ArrowResultPayload:
        copies = []
        if instance is not None and result.counterexample is not None:
            copies = [
                ComplexPayload.from_complex(c) for c in instance.a_copies
            ]
        return cls(
            holds=result.holds,
            method=str(result.method),
            copies=result.copies,
            targets=result.targets,
            nodes=result.nodes,
            elapsed=result.elapsed,
            counterexample=(
                None
                if result.counterexample is None
                else list(result.counterexample)
            ),
            a_copies=copies,
            witness_map=(
                None
                if result.witness_map is None
                else list(result.witness_map)
            ),
        )


class SearchMinPayload(BaseModel):
    """``minimal`` is null for not-found, which refutes nothing."""

    minimal: int | None
    found: bool
    tried: list[int]

    @classmethod
    def from_result(cls, result: SearchMinResult) -> SearchMinPayload:
        return cls(
            minimal=result.value, found=result.found, tried=result.tried
        )


class PigeonholePayload(BaseModel):
    truncation: ComplexPayload
    color: int
    depth: int
    candidates: int

    @classmethod
    def from_result(cls, result: PigeonholeResult) -> PigeonholePayload:
        return cls(
            truncation=ComplexPayload.from_complex(result.truncation),
            color=result.color,
            depth=result.depth,
            candidates=result.candidates,
        )


class ColoredApprox(BaseModel):
    approximation: ComplexPayload
    color: int


class SpaceRamseyPayload(BaseModel):
    holds: bool
    scope: str
    m: int
    colored: int
    targets: int
    nodes: int
    counterexample: list[ColoredApprox] | None = None

    @classmethod
    def from_result(cls, result: SpaceRamseyResult) -> SpaceRamseyPayload:
        coloring = None
        if result.counterexample is not None:
            coloring = [
                ColoredApprox(
                    approximation=ComplexPayload.from_complex(a), color=color
                )
                for a, color in zip(
                    result.colored, result.counterexample, strict=True
                )
            ]
        return cls(
            holds=result.holds,
            scope=str(result.scope),
            m=result.m,
            colored=len(result.colored),
            targets=len(result.targets),
            nodes=result.nodes,
            counterexample=coloring,
        )


class CheckReportPayload(BaseModel):
    name: str
    passed: bool
    checked: int
    failures: int
    first_failure: dict[str, Any] | None = None
    counts: dict[str, int] = Field(default_factory=dict)

    @classmethod
    def from_report(cls, report: CheckReport) -> CheckReportPayload:
        return cls(
            name=report.name,
            passed=report.passed,
            checked=report.checked,
            failures=report.failures,
            first_failure=report.first_failure,
            counts=report.counts,
        )


class AmalgamPayload(BaseModel):
    d: ComplexPayload
    g1: EmbeddingPayload
    g2: EmbeddingPayload

    @classmethod
    def from_result(cls, result: AmalgamResult) -> AmalgamPayload:
        return cls(
            d=ComplexPayload.from_complex(result.d),
            g1=EmbeddingPayload.from_embedding(result.g1),
            g2=EmbeddingPayload.from_embedding(result.g2),
        )


class StagePayload(BaseModel):
    """A limit stage; ``keys`` are the exact order keys as fractions."""

    structure: ComplexPayload
    keys: list[str]

    @classmethod
    def from_snapshot(cls, snap: LimitSnapshot) -> StagePayload:
        return cls(
            structure=ComplexPayload.from_complex(snap.structure),
            keys=[str(key) for key in snap.keys],
        )


class DemandPayload(BaseModel):
    step: int
    pattern: list[str]
    position: int
    link: list[list[int]]
    vertex: str
    created: bool

    @classmethod
    def from_record(cls, record: DemandRecord) -> DemandPayload:
        return cls(
            step=record.step,
            pattern=[str(key) for key in record.pattern],
            position=record.position,
            link=[list(u) for u in record.link],
            vertex=str(record.vertex),
            created=record.created,
        )


class LimitChainPayload(BaseModel):
    class_name: str
    seed: int
    steps: int
    complete: bool
    settled: int
    stages: list[StagePayload]
    chain: CheckReportPayload
    log: list[DemandPayload] = Field(default_factory=list)

    @classmethod
    def from_build(
        cls,
        build: LimitBuild,
        *,
        class_name: str,
        seed: int,
        chain: CheckReport,
        include_log: bool = False,
    ) -> LimitChainPayload:
        return cls(
            class_name=class_name,
            seed=seed,
            steps=build.steps,
            complete=build.complete,
            settled=build.settled,
            stages=[StagePayload.from_snapshot(s) for s in build.snapshots],
            chain=CheckReportPayload.from_report(chain),
            log=(
                [DemandPayload.from_record(r) for r in build.log]
                if include_log
                else []
            ),
        )


class TargetFrequency(BaseModel):
    target: ComplexPayload
    hits: int
    frequency: float


class CoveragePayload(BaseModel):
    params: GenParams
    s: int
    samples: int
    targets: list[TargetFrequency]

    @classmethod
    def from_report(
        cls, report: CoverageReport, params: GenParams, s: int
    ) -> CoveragePayload:
        return cls(
            params=params,
            s=s,
            samples=report.samples,
            targets=[
                TargetFrequency(
                    target=ComplexPayload.from_complex(t),
                    hits=hits,
                    frequency=freq,
                )
                for t, hits, freq in zip(
                    report.targets,
                    report.hits,
                    report.frequencies,
                    strict=True,
                )
            ],
        )


class RunHeader(BaseModel):
    """Reproducibility header written before every JSON result."""

    version: str
    command: str
    seed: int | None = None
    guards: dict[str, Any] = Field(default_factory=dict)


class RunDocument(BaseModel):
    header: RunHeader
    result: Any
