"""
Utility classes that define valid string options.
"""

from enum import IntEnum

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum."""

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

__all__ = [
    "Severity",
    "Weighting",
    "Engine",
    "Mode",
    "NodeSeverity",
    "Study",
]


class Severity(IntEnum):
    """Human-annotated complaint severity, obtained by majority voting of annotators."""

    MODERATE = 1
    SEVERE = 2


class Weighting(StrEnum):
    """Document-term matrix weighting schemes."""

    TF = "TF"
    TFIDF = "TFIDF"


class Engine(StrEnum):
    """
    Training engines. The serial engine is the reference; the strict parallel engine
    reproduces it bit for bit while the fast one may reassociate distance sums.
    """

    SERIAL = "serial"
    PARALLEL_STRICT = "parallel-strict"
    PARALLEL_FAST = "parallel-fast"

    @property
    def mode(self) -> "Mode | None":
        """Parallel arithmetic mode, None for the serial engine."""
        match self:
            case Engine.PARALLEL_STRICT:
                return Mode.STRICT
            case Engine.PARALLEL_FAST:
                return Mode.FAST
            case _:
                return None


class Mode(StrEnum):
    """Arithmetic contract of the parallel engine."""

    STRICT = "strict"  # sequential per-unit accumulation, identical to serial
    FAST = "fast"  # accumulation may be reassociated


class NodeSeverity(StrEnum):
    """Severity label of a map node after voting over its documents."""

    MODERATE = "moderate"
    SEVERE = "severe"
    MIXED = "mixed"
    NONE = "none"


class Study(StrEnum):
    """Benchmark studies."""

    PARITY = "parity"
    SCALING = "scaling"
