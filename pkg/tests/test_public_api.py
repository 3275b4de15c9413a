"""Tests for public API surface."""

from pathlib import Path

import pytest

import polyramsey


def test_version_is_set():
    """Package exposes __version__."""
    assert polyramsey.__version__ == "0.1.0"


def test_py_typed_marker_exists():
    """PEP 561 py.typed marker file exists."""
    marker = (
        Path(__file__).resolve().parents[1] / "src" / "polyramsey" / "py.typed"
    )
    assert marker.exists()


def test_all_exports_are_importable():
    """Every name in __all__ is importable."""
    for name in polyramsey.__all__:
        attr = getattr(polyramsey, name)
        assert attr is not None, f"{name} resolved to None"


def test_lazy_import_complex():
    """FiniteOrderedComplex is lazily importable."""
    cls = polyramsey.FiniteOrderedComplex
    assert cls.__name__ == "FiniteOrderedComplex"


def test_lazy_import_operations():
    """Core operations are lazily importable and callable."""
    assert callable(polyramsey.arrow_check)
    assert callable(polyramsey.depth)
    assert callable(polyramsey.build_limit)


def test_getattr_raises_for_unknown():
    """Unknown attribute raises AttributeError."""
    with pytest.raises(AttributeError, match="no_such_attribute"):
        polyramsey.no_such_attribute  # noqa: B018
