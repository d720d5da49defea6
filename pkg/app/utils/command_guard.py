# app/utils/command_guard.py
from functools import wraps
from typing import Callable

from app.core.errors import WorkbenchError
from app.utils.logger import get_logger

logger = get_logger(__name__)


def guarded(command: str):
    """Let domain errors through; wrap anything else as a failure of `command`."""
    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except WorkbenchError:
                raise
            except Exception as e:
                logger.exception(f"Unexpected failure in {command}")
                raise WorkbenchError(f"Error running {command}: {e}")
        return wrapper
    return decorator
