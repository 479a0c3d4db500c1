"""Configuration management - loads YAML with environment variable overrides."""

from functools import lru_cache
import json
import os
from pathlib import Path
from typing import Any

import yaml
from sympy import nextprime

# Type alias for the config dict
Config = dict[str, Any]

# Environment variable prefix for config overrides
ENV_PREFIX = "IPSLAB_"

# Environment variable naming an alternative config file
CONFIG_PATH_ENV = "IPSLAB_CONFIG"

DEFAULT_CONFIG: Config = {
    "max-vars": 24,
    "pd-max-side": 14,
    "coeff-max-support": 30,
    "roabp-max-vars": 24,
    "roabp-max-width": 64,
    "roabp-max-label-degree": 8,
    "extension-max-degree": 16,
    "inverse-validation-limit": 10,
    "vecinv-max-factors": 1,
    "rank-trials": 3,
    "default-prime": None,
    "log-level": "INFO",
}


def load_config(config_path: Path = Path("config.yaml")) -> Config:
    """Load configuration from a YAML file on top of the built-in defaults.

    Args:
        config_path: Path to the YAML config file.

    Returns:
        Raw dict containing all config values.

    Raises:
        FileNotFoundError: If config file doesn't exist.
    """
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path) as f:
        loaded = yaml.safe_load(f) or {}

    config = {**DEFAULT_CONFIG, **loaded}
    _apply_env_overrides(config)
    return config


def env_key(key: str, prefix: str = ENV_PREFIX) -> str:
    """``max-vars`` -> ``IPSLAB_MAX_VARS``."""
    return f"{prefix}{key.upper().replace('-', '_')}"


def _parse_override(name: str, raw: str, current: Any) -> Any:
    """Parse one override; lists must be JSON arrays, scalars are YAML scalars."""
    if isinstance(current, list):
        try:
            parsed = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(
                f"{name} must be a JSON array (e.g. '[1, 2]'), got {raw!r}"
            ) from exc
        if not isinstance(parsed, list):
            raise ValueError(
                f"{name} must be a JSON array, got {type(parsed).__name__}"
            )
        return parsed
    try:
        return yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError:
        return raw


def _apply_env_overrides(config: Config, prefix: str = ENV_PREFIX) -> None:
    """Overwrite entries of *config* in place from ``IPSLAB_*`` environment variables.

    Nested sections extend the prefix (``IPSLAB_SECTION_KEY``). Only keys
    already present are looked up.
    """
    for key, current in config.items():
        name = env_key(key, prefix)
        if isinstance(current, dict):
            _apply_env_overrides(current, f"{name}_")
            continue
        raw = os.getenv(name)
        if raw is not None:
            config[key] = _parse_override(name, raw, current)


@lru_cache
def get_config() -> Config:
    """Get cached configuration dict.

    Reads ``$IPSLAB_CONFIG`` or ``./config.yaml`` when present; otherwise the
    built-in defaults (still subject to environment overrides).
    """
    path = Path(os.getenv(CONFIG_PATH_ENV, "config.yaml"))
    if path.exists():
        return load_config(path)
    config = dict(DEFAULT_CONFIG)
    _apply_env_overrides(config)
    return config


def config_int(key: str, value: int | None = None, config: Config | None = None) -> int:
    """Return *value* when given, else the integer config entry *key*."""
    if value is not None:
        return int(value)
    config = get_config() if config is None else config
    return int(config[key])


def default_prime(config: Config | None = None) -> int:
    """The modular-experiment prime: configured, or the smallest above 2^31."""
    config = get_config() if config is None else config
    configured = config.get("default-prime")
    if configured not in (None, ""):
        return int(configured)
    return int(nextprime(2**31))
