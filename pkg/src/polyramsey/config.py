"""Runtime configuration: resource guards and defaults."""

from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class PolyramseySettings(BaseSettings):
    """Guards and horizons shared by every search operation.

    Reads from environment variables with POLYRAMSEY_ prefix.
    """

    model_config = SettingsConfigDict(env_prefix="POLYRAMSEY_")

    # Search guards
    node_budget: int = Field(default=10_000_000, gt=0)
    time_budget_seconds: float | None = Field(default=None, gt=0)
    exhaustive_colorings_max: int = Field(default=2**20, gt=0)

    # Truncation horizons
    depth_horizon: int = Field(default=2**16, gt=0)
    leq_horizon: int = Field(default=64, gt=0)
    pigeonhole_horizon: int = Field(default=50, gt=0)

    # Enumeration guards
    enumerate_max_unbounded: int = Field(default=6, gt=0)
    enumerate_max_bounded: int = Field(default=8, gt=0)
    axioms_max_unbounded: int = Field(default=4, gt=0)
    axioms_max_bounded: int = Field(default=5, gt=0)
    unbounded_generation_max: int = Field(default=20, gt=0)
    limit_step_budget: int = Field(default=100_000, gt=0)

    workers: int = Field(default=1, gt=0)
    log_level: str = "WARNING"


def get_settings() -> PolyramseySettings:
    """Build settings from the current environment."""
    return PolyramseySettings()
