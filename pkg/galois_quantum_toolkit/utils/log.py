import logging
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler

from .config import get_log_dir, get_log_level

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _stderr_handler(level: int) -> logging.Handler:
    handler = RichHandler(
        console=Console(stderr=True),
        show_time=True,
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setLevel(level)
    return handler


def _file_handler(path: Path, level: int) -> logging.Handler:
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, mode="a")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT))
    return handler


def create_logger(
    name: str,
    level: int | None = None,
    log_dir: Path | None = None,
    log_file: str | None = None,
    console_output: bool = True,
) -> logging.Logger:
    """
    Create a logger with rich console output on stderr and an optional log file.

    Stdout is reserved for command output, so nothing here writes to it.

    Args:
        name: Logger name
        level: Logging level (default: GQT_LOG_LEVEL, else WARNING)
        log_dir: Directory for log files (default: GQT_LOG_DIR, else no file)
        log_file: Log file name (default: <name>.log)
        console_output: Whether to log to the console

    Returns:
        The configured logger
    """
    level = get_log_level() if level is None else level
    log_dir = get_log_dir() if log_dir is None else log_dir

    logger = logging.getLogger(name)
    logger.setLevel(level)
    # repeated calls for the same name must not stack handlers
    logger.handlers.clear()

    if console_output:
        logger.addHandler(_stderr_handler(level))
    if log_dir is not None:
        logger.addHandler(_file_handler(log_dir / (log_file or f"{name}.log"), level))
    return logger
