# lumpgap/config.py
"""
Numeric thresholds and environment-driven settings.

Every tolerance used by the library lives here so that reports and tests agree
on a single set of numbers. `load_settings()` reads `.env` / environment
overrides for the knobs a user may reasonably change between runs.
"""
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError

# Linear algebra
SYMMETRY_TOL = 1e-12
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

# Model
ROW_SUM_TOL = 1e-12
TIE_TOL = 1e-12
SHORTCUT_TOL = 1e-10
# row sums of values below this cannot overflow
MAX_MODEL_MAGNITUDE = 1e300

# Compression
PSD_TOL = 1e-10

# Closed forms and certificate
DISCREPANCY_LIMIT = 1e-11
STRICT_TOL = 1e-12
MAXIMIZER_TIE_TOL = 1e-12
# ranking compares determinants at this many decimals; equal values fall back to canonical order
RANK_DECIMALS = 12
CERTIFIED_TOL = 1e-9
MAX_TOL_OVERRIDE = 1e-3
REPORT_DECIMALS = 10

# Partitions
MAX_STATES = 12

DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Run settings resolved from the environment."""
    tol: float = CERTIFIED_TOL
    log_level: str = DEFAULT_LOG_LEVEL
    log_dir: Optional[Path] = None
    workers: int = 1


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from None


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{name} must be >= 1, got {value}")
    return value


def check_tolerance(tol: float) -> float:
    """Certified comparison tolerances must lie in (0, 1e-3]."""
    if not (0.0 < tol <= MAX_TOL_OVERRIDE):
        raise ConfigError(f"tolerance must be positive and <= {MAX_TOL_OVERRIDE:g}, got {tol!r}")
    return tol


def load_settings(dotenv_path: Optional[Path] = None) -> Settings:
    """Load settings from `.env` (if present) and the process environment."""
    load_dotenv(dotenv_path=dotenv_path, override=False)

    tol = check_tolerance(_env_float("LUMPGAP_TOL", CERTIFIED_TOL))
    level = os.getenv("LUMPGAP_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper() or DEFAULT_LOG_LEVEL
    if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        raise ConfigError(f"LUMPGAP_LOG_LEVEL must be a logging level name, got {level!r}")
    log_dir = os.getenv("LUMPGAP_LOG_DIR")

    return Settings(
        tol=tol,
        log_level=level,
        log_dir=Path(log_dir) if log_dir else None,
        workers=_env_int("LUMPGAP_WORKERS", 1),
    )
