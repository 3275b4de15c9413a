"""Shared fixtures for polyramsey tests."""

from __future__ import annotations

import os
from collections.abc import Iterator

import pytest

from polyramsey.budget import SearchBudget
from polyramsey.complex import (
    FiniteOrderedComplex,
    bounded_full,
    close_downward,
    full_simplex,
    pure_set,
)
from polyramsey.config import PolyramseySettings


@pytest.fixture(autouse=True)
def isolate_environment(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Keep POLYRAMSEY_ variables of the caller out of the tests."""
    for name in list(os.environ):
        if name.startswith("POLYRAMSEY_"):
            monkeypatch.delenv(name)
    yield


@pytest.fixture()
def settings() -> PolyramseySettings:
    return PolyramseySettings()


@pytest.fixture()
def budget(settings: PolyramseySettings) -> SearchBudget:
    return SearchBudget.from_settings(settings)


@pytest.fixture()
def edge() -> FiniteOrderedComplex:
    """Two vertices joined by a face."""
    return full_simplex([0, 1])


@pytest.fixture()
def path3() -> FiniteOrderedComplex:
    """The path 0-1-2."""
    return close_downward([[0, 1], [1, 2]], [0, 1, 2])


@pytest.fixture()
def hollow_triangle() -> FiniteOrderedComplex:
    return bounded_full([0, 1, 2], 2)


@pytest.fixture()
def point() -> FiniteOrderedComplex:
    return pure_set([0])
