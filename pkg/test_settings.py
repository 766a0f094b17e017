"""
Tests for environment-driven settings.
"""

import logging

import pytest

from config.settings import Settings

VARIABLES = ("NILCAYLEY_MAX_DIM", "NILCAYLEY_EXHAUSTIVE_DIM", "NILCAYLEY_MAX_N", "NILCAYLEY_MAX_K",
             "NILCAYLEY_MAX_EXPONENT", "NILCAYLEY_WORKERS", "NILCAYLEY_SEED", "LOG_LEVEL")


@pytest.fixture
def clean_env(monkeypatch):
    for name in VARIABLES:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    s = Settings()
    assert (s.max_dim, s.exhaustive_dim, s.max_n, s.max_k) == (4096, 40, 5, 4)
    assert s.max_exponent == 64
    assert s.default_seed == 42
    assert s.logging_level == logging.WARNING


def test_overrides(clean_env):
    clean_env.setenv("NILCAYLEY_MAX_N", "3")
    clean_env.setenv("LOG_LEVEL", "debug")
    s = Settings()
    assert s.max_n == 3
    assert s.logging_level == logging.DEBUG


def test_invalid_values_are_listed(clean_env):
    clean_env.setenv("NILCAYLEY_MAX_DIM", "lots")
    clean_env.setenv("NILCAYLEY_WORKERS", "0")
    clean_env.setenv("LOG_LEVEL", "verbose")
    with pytest.raises(ValueError) as info:
        Settings()
    message = str(info.value)
    assert "NILCAYLEY_MAX_DIM" in message
    assert "NILCAYLEY_WORKERS" in message
    assert "LOG_LEVEL" in message
