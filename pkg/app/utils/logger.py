# utils/logger.py
import logging
import sys

from app.core.config import LOG_LEVEL


def get_logger(name: str = "workbench"):
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(LOG_LEVEL)
    return logger


def set_level(level: str):
    """Apply a log level to every workbench logger created so far."""
    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and (name == "workbench" or name.startswith("app")):
            logger.setLevel(level.upper())
