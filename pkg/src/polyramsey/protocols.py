"""Structural interfaces for infinite complexes."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Protocol, runtime_checkable

if TYPE_CHECKING:
    from collections.abc import Iterable

    from polyramsey.complex import FiniteOrderedComplex

__all__ = [
    "ComplexOracle",
]


@runtime_checkable
class ComplexOracle(Protocol):
    """Finite access to an infinite ordered polyhedron.

    Truncations must be coherent: ``truncate(n)`` is the restriction of
    ``truncate(m)`` to its first ``n`` vertices whenever ``n <= m``.
    """

    kind: str

    def label(self, index: int) -> int:
        """Label of the vertex at position ``index`` (zero based)."""
        ...

    def truncate(self, n: int) -> FiniteOrderedComplex:
        """The approximation ``r_n`` on the first ``n`` vertices."""
        ...

    def has_face(self, face: Iterable[int]) -> bool:
        """Membership of a finite set of labels in the face family."""
        ...

    def header(self) -> dict[str, Any]:
        """Kind and parameters, enough to rebuild the oracle."""
        ...
