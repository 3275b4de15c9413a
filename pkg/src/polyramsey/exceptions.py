"""Exception types and their CLI exit codes."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import cast

logger = logging.getLogger(__name__)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


class PolyramseyError(Exception):
    """Base class for all library errors."""


class InvalidInputError(PolyramseyError):
    """An argument violates an operation's precondition."""

    def __init__(self, message: str, *, value: object = None) -> None:
        self.value = value
        super().__init__(message)


class ConfigurationError(PolyramseyError):
    """An oracle header, registry entry or setting is unusable."""

    def __init__(self, message: str) -> None:
        super().__init__(message)


class ResourceLimitError(PolyramseyError):
    """A search guard was exhausted; the answer is unknown."""

    def __init__(self, resource: str, limit: int | float) -> None:
        self.resource = resource
        self.limit = limit
        super().__init__(f"{resource} limit {limit} exceeded")


class HorizonExceededError(ResourceLimitError):
    """An oracle cannot provide a truncation that long."""

    def __init__(self, requested: int, available: int) -> None:
        self.requested = requested
        self.available = available
        super().__init__("truncation horizon", available)


class NoCandidatesError(PolyramseyError):
    """The pigeonhole step found no extension vertex within its horizon."""

    def __init__(self, horizon: int) -> None:
        self.horizon = horizon
        super().__init__(f"no extension candidates within horizon {horizon}")


def handle_invalid_input(exc: InvalidInputError) -> int:
    """Map InvalidInputError to the usage exit code."""
    logger.error("invalid input: %s", exc)
    return EXIT_USAGE


def handle_configuration_error(exc: ConfigurationError) -> int:
    """Map ConfigurationError to the usage exit code."""
    logger.error("configuration error: %s", exc)
    return EXIT_USAGE


def handle_resource_limit(exc: ResourceLimitError) -> int:
    """Map ResourceLimitError to the unknown exit code."""
    logger.warning("result unknown: %s", exc)
    return EXIT_UNKNOWN


def handle_no_candidates(exc: NoCandidatesError) -> int:
    """Map NoCandidatesError to the negative exit code."""
    logger.warning("%s", exc)
    return EXIT_NEGATIVE


EXIT_CODE_HANDLERS: dict[type[PolyramseyError], Callable[..., int]] = {
    InvalidInputError: handle_invalid_input,
    ConfigurationError: handle_configuration_error,
    ResourceLimitError: handle_resource_limit,
    NoCandidatesError: handle_no_candidates,
}


def exit_code_for(exc: PolyramseyError) -> int:
    """Resolve the exit code for an error, most specific class first."""
    for cls in type(exc).__mro__:
        handler = EXIT_CODE_HANDLERS.get(cast(type[PolyramseyError], cls))
        if handler is not None:
            return handler(exc)
    return EXIT_USAGE
