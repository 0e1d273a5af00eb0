"""Application configuration and settings."""

from pathlib import Path
from dataclasses import dataclass


LOG_DIR = Path(__file__).parent.parent / "logs"

APP_NAME = "isom-realizer"
APP_VERSION = "0.1.0"

SCHEMA_VERSION = 1

DEFAULT_TRUNCATION = 2
DEFAULT_RADIUS = 3
DEFAULT_SEED = 0

# Significant digits for lengths written to JSON; 17 round-trips a double
LENGTH_DIGITS = 17

IDENTITY_TOLERANCE = 1e-12
HEXAGON_TOLERANCE = 1e-10


@dataclass(frozen=True)
class AppConfig:
    """Global application configuration."""

    log_dir: Path = LOG_DIR
    app_name: str = APP_NAME
    app_version: str = APP_VERSION
    schema_version: int = SCHEMA_VERSION
    default_truncation: int = DEFAULT_TRUNCATION
    default_radius: int = DEFAULT_RADIUS
    default_seed: int = DEFAULT_SEED
    length_digits: int = LENGTH_DIGITS
    identity_tolerance: float = IDENTITY_TOLERANCE
    hexagon_tolerance: float = HEXAGON_TOLERANCE
