"""
Configuration settings for the application.
"""

import os
from typing import Dict, Any

from constants import Constants
from exceptions import ConfigurationError


def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e


class Config:
    """Configuration settings."""

    # File paths
    DEFAULT_OUTPUT_DIR = "output"

    @classmethod
    def default_seed(cls) -> int:
        """Master seed used by `simulate` when --seed is not given."""
        return _int_from_env("SWITCHDMT_SEED", Constants.DEFAULT_SEED)

    @classmethod
    def default_workers(cls) -> int:
        return max(1, _int_from_env("SWITCHDMT_WORKERS", 1))

    @classmethod
    def log_level(cls) -> str:
        return os.environ.get("LOG_LEVEL", "INFO").upper()

    @classmethod
    def log_file(cls) -> str:
        return os.environ.get("LOG_FILE", "")

    @classmethod
    def output_dir(cls) -> str:
        return os.environ.get("SWITCHDMT_OUTPUT_DIR", cls.DEFAULT_OUTPUT_DIR)

    @classmethod
    def get_simulation_defaults(cls) -> Dict[str, Any]:
        """Get simulation defaults."""
        return {
            "seed": cls.default_seed(),
            "workers": cls.default_workers(),
            "trial_block_size": Constants.TRIAL_BLOCK_SIZE,
        }
