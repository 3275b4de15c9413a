"""Workbench for the Ramsey space of ordered polyhedra."""

from __future__ import annotations

from importlib import import_module
from typing import TYPE_CHECKING, Any

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "ArrowQuery",
    "ArrowResult",
    "ClassSpec",
    "ComplexOracle",
    "ConfigurationError",
    "Embedding",
    "FiniteOrderedComplex",
    "GenParams",
    "InvalidInputError",
    "Mode",
    "NoCandidatesError",
    "OracleRegistry",
    "PolyramseyError",
    "PolyramseySettings",
    "ResourceLimitError",
    "SearchBudget",
    "__version__",
    "approx",
    "arrow_check",
    "arrow_search_min",
    "build_limit",
    "depth",
    "enumerate_class",
    "enumerate_embeddings",
    "pure_set",
    "random_polyhedron",
    "restrict",
    "space_ramsey_check",
    "verify_class_axioms",
]

if TYPE_CHECKING:
    from polyramsey.arrow import (
        Ambient,
        ArrowQuery,
        ArrowResult,
        arrow_check,
        arrow_search_min,
    )
    from polyramsey.budget import SearchBudget
    from polyramsey.complex import (
        FiniteOrderedComplex,
        approx,
        enumerate_class,
        pure_set,
        restrict,
    )
    from polyramsey.config import PolyramseySettings
    from polyramsey.embeddings import Embedding, Mode, enumerate_embeddings
    from polyramsey.exceptions import (
        ConfigurationError,
        InvalidInputError,
        NoCandidatesError,
        PolyramseyError,
        ResourceLimitError,
    )
    from polyramsey.fraisse import ClassSpec, verify_class_axioms
    from polyramsey.limit import build_limit
    from polyramsey.oracles import depth
    from polyramsey.protocols import ComplexOracle
    from polyramsey.randgen import GenParams, random_polyhedron
    from polyramsey.registry import OracleRegistry
    from polyramsey.space import space_ramsey_check

# Lazy imports keep ``import polyramsey`` free of numpy and pydantic.
_EXPORTS = {
    "Ambient": "arrow",
    "ArrowQuery": "arrow",
    "ArrowResult": "arrow",
    "arrow_check": "arrow",
    "arrow_search_min": "arrow",
    "SearchBudget": "budget",
    "FiniteOrderedComplex": "complex",
    "approx": "complex",
    "enumerate_class": "complex",
    "pure_set": "complex",
    "restrict": "complex",
    "PolyramseySettings": "config",
    "Embedding": "embeddings",
    "Mode": "embeddings",
    "enumerate_embeddings": "embeddings",
    "ConfigurationError": "exceptions",
    "InvalidInputError": "exceptions",
    "NoCandidatesError": "exceptions",
    "PolyramseyError": "exceptions",
    "ResourceLimitError": "exceptions",
    "ClassSpec": "fraisse",
    "verify_class_axioms": "fraisse",
    "build_limit": "limit",
    "depth": "oracles",
    "ComplexOracle": "protocols",
    "GenParams": "randgen",
    "random_polyhedron": "randgen",
    "OracleRegistry": "registry",
    "space_ramsey_check": "space",
}


def __getattr__(name: str) -> Any:
    module = _EXPORTS.get(name)
    if module is None:
        raise AttributeError(
            f"module 'polyramsey' has no attribute {name!r}"
        )
    return getattr(import_module(f"polyramsey.{module}"), name)
