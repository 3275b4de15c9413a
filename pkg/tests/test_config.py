"""Tests for PolyramseySettings."""

import pytest
from pydantic import ValidationError

from polyramsey.config import PolyramseySettings, get_settings


def test_settings_defaults():
    """Settings carry the documented guard defaults."""
    settings = PolyramseySettings()
    assert settings.node_budget == 10_000_000
    assert settings.time_budget_seconds is None
    assert settings.depth_horizon == 2**16
    assert settings.leq_horizon == 64
    assert settings.pigeonhole_horizon == 50
    assert settings.enumerate_max_unbounded == 6
    assert settings.enumerate_max_bounded == 8
    assert settings.exhaustive_colorings_max == 2**20
    assert settings.workers == 1
    assert settings.log_level == "WARNING"


def test_settings_env_prefix(monkeypatch):
    """Settings read from POLYRAMSEY_ env vars."""
    monkeypatch.setenv("POLYRAMSEY_NODE_BUDGET", "1000")
    monkeypatch.setenv("POLYRAMSEY_TIME_BUDGET_SECONDS", "2.5")
    settings = get_settings()
    assert settings.node_budget == 1000
    assert settings.time_budget_seconds == 2.5


def test_settings_custom_values():
    """Explicit values override the defaults."""
    settings = PolyramseySettings(pigeonhole_horizon=10, workers=4)
    assert settings.pigeonhole_horizon == 10
    assert settings.workers == 4


def test_guards_must_be_positive():
    """A zero guard is rejected."""
    with pytest.raises(ValidationError):
        PolyramseySettings(node_budget=0)
