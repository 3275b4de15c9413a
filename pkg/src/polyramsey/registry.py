"""Oracle registry: kind names to oracle factories."""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Protocol

from pydantic import ValidationError

from polyramsey.exceptions import ConfigurationError, InvalidInputError
from polyramsey.oracles import (
    BoundedFullOracle,
    FullSimplexOracle,
    PureSetOracle,
    RandomStreamOracle,
    TruncationFileOracle,
)
from polyramsey.protocols import ComplexOracle
from polyramsey.schemas import OracleFile

logger = logging.getLogger(__name__)

ALIASES = {"explicit-truncation": TruncationFileOracle.kind}


class OracleFactory(Protocol):
    def from_params(self, params: Mapping[str, Any]) -> ComplexOracle: ...


class OracleRegistry:
    """Maps oracle kinds to the classes that build them."""

    def __init__(self) -> None:
        self._factories: dict[str, OracleFactory] = {}

    def register(self, kind: str, factory: OracleFactory) -> None:
        if kind in self._factories:
            raise ConfigurationError(f"oracle kind {kind!r} already registered")
        self._factories[kind] = factory

    def kinds(self) -> list[str]:
        return sorted(self._factories)

    def get(self, kind: str) -> OracleFactory:
        try:
            return self._factories[kind]
        except KeyError:
            raise ConfigurationError(
                f"unknown oracle kind {kind!r}; "
                f"known: {', '.join(self.kinds())}"
            ) from None

    def build(
        self, kind: str, params: Mapping[str, Any] | None = None
    ) -> ComplexOracle:
        oracle = self.get(kind).from_params(params or {})
        logger.debug("built oracle %s", oracle.header())
        return oracle


def default_registry() -> OracleRegistry:
    """Registry with the built-in oracle kinds."""
    registry = OracleRegistry()
    for factory in (
        FullSimplexOracle,
        BoundedFullOracle,
        PureSetOracle,
        RandomStreamOracle,
        TruncationFileOracle,
    ):
        registry.register(factory.kind, factory)
    for alias, kind in ALIASES.items():
        registry.register(alias, registry.get(kind))
    return registry


def load_oracle_file(
    path: str | Path, registry: OracleRegistry | None = None
) -> ComplexOracle:
    """Load an oracle file: a ``{kind, params}`` header plus truncations.

    When truncations are listed the file is the oracle, whatever kind the
    header names; otherwise the header alone is rebuilt.
    """
    source = Path(path)
    try:
        document = OracleFile.model_validate(json.loads(source.read_text()))
    except OSError as exc:
        raise InvalidInputError(f"cannot read oracle file {source}") from exc
    except (ValueError, ValidationError) as exc:
        raise ConfigurationError(
            f"malformed oracle file {source}: {exc}"
        ) from exc
    if document.truncations:
        return TruncationFileOracle(
            truncations=tuple(t.to_complex() for t in document.truncations),
            source=str(source),
        )
    actual = registry or default_registry()
    return actual.build(document.kind, document.params)
