"""
Miscellaneous utilities for logging and timing.
"""

import logging
import os
import time

__all__ = ["Timer", "configure_logging"]

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | None = None) -> None:
    """
    Configure the root logger to write to stderr.

    Parameters
    ----------
    level : str | None
        A logging level name. If None, `SOM_LOG_LEVEL` is used, falling back to INFO.
    """
    level = (level or os.getenv("SOM_LOG_LEVEL") or "INFO").upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


class Timer:
    """
    A context manager measuring wall-clock time of its body.

    Examples
    --------
    >>> with Timer() as timer:
    ...     pass
    >>> timer.seconds >= 0
    True
    """

    def __init__(self):
        self.start = 0.0
        self.seconds = 0.0

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = time.perf_counter() - self.start
