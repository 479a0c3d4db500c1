"""Pytest fixtures and configuration."""

from collections.abc import Generator
from pathlib import Path

import pytest

from ipslab.algebra import ExtensionField, PrimeField, RationalField, create_field
from ipslab.config import CONFIG_PATH_ENV, get_config


@pytest.fixture(autouse=True)
def default_config(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> Generator[None, None, None]:
    """Run every test on the built-in defaults, ignoring any local config.yaml."""
    monkeypatch.setenv(CONFIG_PATH_ENV, str(tmp_path / "absent.yaml"))
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def qq() -> RationalField:
    """The rationals."""
    return create_field("Q")


@pytest.fixture
def f101() -> PrimeField:
    """A small prime field."""
    return create_field("Fp:101")


@pytest.fixture
def f4() -> ExtensionField:
    """F_4 with its deterministic modulus z^2 + z + 1."""
    return create_field("Fpk:p=2,k=2")
