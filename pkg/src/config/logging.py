import sys
from typing import Optional

from django.conf import settings
from loguru import logger

VERBOSITY_LEVELS = {
    0: 'ERROR',
    1: 'WARNING',
    2: 'INFO',
    3: 'DEBUG',
}


def configure_logging(level: Optional[str] = None, sink=None) -> None:
    """Replace every loguru handler with one sink at ``level`` (default ``LOG_LEVEL``)."""
    level = level or settings.LOG_LEVEL
    logger.remove()
    logger.add(
        sink or sys.stderr,
        level=level,
        format='<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{line} - {message}',
    )


def level_for_verbosity(verbosity: int) -> str:
    return VERBOSITY_LEVELS.get(verbosity, 'DEBUG')
