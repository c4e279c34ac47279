"""
Logging setup shared by the CLI and the library.
"""
import logging
from pathlib import Path
from typing import Optional, Union

from config import settings


def configure_logging(
    level: Union[int, str] = settings.LOG_LEVEL,
    log_file: Optional[Union[str, Path]] = settings.LOG_FILE,
) -> None:
    """
    Configure the root logger with a stream handler and an optional file handler.

    Args:
        level: Logging level name or number
        log_file: Optional path of a log file
    """
    handlers = [logging.StreamHandler()]
    if log_file is not None:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    logging.basicConfig(
        level=level,
        format=settings.LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def setup_logger(name: str, level: Union[int, str] = logging.INFO) -> logging.Logger:
    """
    Get a named logger at the given level.

    Args:
        name: Logger name
        level: Logging level

    Returns:
        logging.Logger: Configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    return logger
