"""
Runtime configuration, read from the environment (or a local .env file).
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

DEFAULT_TOLERANCE = 1e-9
FLOAT_SIGNIFICANT_DIGITS = 12

OUTPUT_DIR_ENV = "GQT_OUTPUT_DIR"
LOG_DIR_ENV = "GQT_LOG_DIR"
LOG_LEVEL_ENV = "GQT_LOG_LEVEL"
THREADS_ENV = "GQT_THREADS"


def _path_from_env(variable: str) -> Path | None:
    value = os.getenv(variable)
    if not value:
        return None
    return Path(value)


def get_output_dir() -> Path | None:
    """Directory every CLI report is mirrored to, or None when unset."""
    return _path_from_env(OUTPUT_DIR_ENV)


def get_log_dir() -> Path | None:
    """Directory for log files, or None for console-only logging."""
    return _path_from_env(LOG_DIR_ENV)


def get_log_level() -> int:
    name = os.getenv(LOG_LEVEL_ENV, "WARNING").upper()
    level = logging.getLevelName(name)
    # getLevelName returns "Level X" for unknown names
    return level if isinstance(level, int) else logging.WARNING


def get_default_threads() -> int:
    value = os.getenv(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        return 1
    return max(1, threads)
