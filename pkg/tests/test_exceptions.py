"""Tests for exception-to-exit-code mapping."""

from polyramsey.exceptions import (
    EXIT_CODE_HANDLERS,
    EXIT_NEGATIVE,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    ConfigurationError,
    HorizonExceededError,
    InvalidInputError,
    NoCandidatesError,
    PolyramseyError,
    ResourceLimitError,
    exit_code_for,
)


def test_invalid_input_maps_to_usage():
    """InvalidInputError maps to exit code 2."""
    exc = InvalidInputError("bad labels", value=[-1])
    assert exc.value == [-1]
    assert exit_code_for(exc) == EXIT_USAGE


def test_configuration_error_maps_to_usage():
    """ConfigurationError maps to exit code 2."""
    assert exit_code_for(ConfigurationError("unknown kind")) == EXIT_USAGE


def test_resource_limit_maps_to_unknown():
    """ResourceLimitError maps to exit code 3 and keeps its context."""
    exc = ResourceLimitError("search node", 100)
    assert exc.resource == "search node"
    assert exc.limit == 100
    assert "100" in str(exc)
    assert exit_code_for(exc) == EXIT_UNKNOWN


def test_horizon_exceeded_is_a_resource_limit():
    """HorizonExceededError resolves through its parent handler."""
    exc = HorizonExceededError(requested=10, available=4)
    assert exc.requested == 10
    assert exc.available == 4
    assert isinstance(exc, ResourceLimitError)
    assert exit_code_for(exc) == EXIT_UNKNOWN


def test_no_candidates_maps_to_negative():
    """NoCandidatesError maps to exit code 1."""
    exc = NoCandidatesError(50)
    assert exc.horizon == 50
    assert exit_code_for(exc) == EXIT_NEGATIVE


def test_unmapped_error_falls_back_to_usage():
    """A bare PolyramseyError still gets an exit code."""
    assert exit_code_for(PolyramseyError("odd")) == EXIT_USAGE


def test_exit_code_handlers_is_dict():
    """EXIT_CODE_HANDLERS maps exception types to callables."""
    assert isinstance(EXIT_CODE_HANDLERS, dict)
    assert len(EXIT_CODE_HANDLERS) == 4
    for exc_type, handler in EXIT_CODE_HANDLERS.items():
        assert issubclass(exc_type, PolyramseyError)
        assert callable(handler)
