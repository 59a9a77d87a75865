# core/logger.py

import logging
import sys

from core.config import config


def setup_logging(level=None, stream=None):
    """Send status lines to stderr; stdout carries command output only"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_dnaword", False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
    handler._dnaword = True
    root.addHandler(handler)
    root.setLevel(level if level is not None else config.LOG_LEVEL)
    return root


def level_from_flags(verbose: int = 0, quiet: bool = False) -> int:
    if quiet:
        return logging.ERROR
    base = logging.getLevelName(config.LOG_LEVEL)
    return max(logging.DEBUG, base - 10 * verbose)
