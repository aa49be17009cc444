# utils.py
"""Utility functions for logging and small parsing helpers."""

import logging
from fractions import Fraction
from typing import List, Union

from config import LOG_FORMAT, LOG_LEVEL, LOG_FILE


def setup_logging(name: str) -> logging.Logger:
    """Set up logging configuration.

    Diagnostics always go to stderr; a log file is added when
    ``INERTIA_LOG_FILE`` is set.
    """
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if LOG_FILE:
        handlers.append(logging.FileHandler(LOG_FILE))
    logging.basicConfig(
        format=LOG_FORMAT,
        level=getattr(logging, LOG_LEVEL, logging.WARNING),
        handlers=handlers
    )
    return logging.getLogger(name)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"`` into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {text!r}") from e


def sign(value) -> int:
    """Return -1, 0 or 1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def ceil_half(n: int) -> int:
    return (n + 1) // 2
