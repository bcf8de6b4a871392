"""Tests for the RAUZYKIT_* environment configuration."""

from __future__ import annotations

import logging
import os

import mpmath
import pytest

from config.env_loader import EnvironmentConfig, get_config, reset_config


def test_defaults_are_loaded(tmp_path):
    config = EnvironmentConfig(env_file=str(tmp_path / "missing.env"))

    assert config.get('log_level') == 'INFO'
    assert config.get('float_tie_tolerance') == pytest.approx(1e-12)
    assert config.get('zorich_cap') == 1_000_000
    assert config.get('slow_fraction') == pytest.approx(0.05)
    assert config.get('orthogonality_threshold') == pytest.approx(1e-10)
    assert config.get('unknown', 'fallback') == 'fallback'
    assert config.get_tolerances()['keane'] == pytest.approx(1e-12)


def test_env_file_values_override_defaults(tmp_path):
    env_file = tmp_path / ".env"
    env_file.write_text("RAUZYKIT_ZORICH_CAP=500\nRAUZYKIT_OUTPUT_DIR=/tmp/rauzykit-runs\n")

    try:
        config = EnvironmentConfig(env_file=str(env_file))
        assert config.get('zorich_cap') == 500
        assert str(config.get_output_dir()) == "/tmp/rauzykit-runs"
    finally:
        # load_dotenv writes straight into os.environ
        os.environ.pop("RAUZYKIT_ZORICH_CAP", None)
        os.environ.pop("RAUZYKIT_OUTPUT_DIR", None)


@pytest.mark.parametrize(
    "key, value",
    [
        ("RAUZYKIT_FLOAT_TIE_TOLERANCE", "-1"),
        ("RAUZYKIT_MP_DPS", "10"),
        ("RAUZYKIT_ZORICH_CAP", "0"),
        ("RAUZYKIT_LOG_LEVEL", "CHATTY"),
    ],
)
def test_invalid_values_are_rejected(tmp_path, monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ValueError):
        EnvironmentConfig(env_file=str(tmp_path / "missing.env"))


def test_precision_is_only_raised(tmp_path, monkeypatch):
    monkeypatch.setenv("RAUZYKIT_MP_DPS", "40")
    with mpmath.workdps(120):
        EnvironmentConfig(env_file=str(tmp_path / "missing.env"))
        assert mpmath.mp.dps == 120


def test_get_config_is_a_singleton():
    first = get_config()
    assert get_config() is first
    reset_config()
    assert get_config() is not first


def test_logger_is_configured(tmp_path):
    config = EnvironmentConfig(env_file=str(tmp_path / "missing.env"))
    assert isinstance(config.get_logger(), logging.Logger)
