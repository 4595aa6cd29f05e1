"""
Entity (model) definitions for base objects that others inherit from.
"""

from datetime import datetime

try:
    from datetime import UTC
except ImportError:  # Python < 3.11
    from datetime import timezone

    UTC = timezone.utc

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .. import __version__

__all__ = ["ArrayModel", "RunMetadata", "timestamp"]


def timestamp() -> str:
    """
    Get the current timestamp in the ISO format.

    Returns
    -------
    str
        A timestamp in the ISO format.
    """
    return datetime.now(UTC).isoformat()


class ArrayModel(BaseModel):
    """Base model for entities holding numpy arrays or scipy matrices."""

    model_config = ConfigDict(arbitrary_types_allowed=True)


class RunMetadata(BaseModel):
    """Metadata of a training run that is kept out of the binary map container."""

    engine: str = Field(description="Engine tag the map was trained with.")
    workers: int = Field(default=1, ge=1)
    wall_seconds: float = Field(
        default=0.0,
        ge=0.0,
        description="Wall-clock time of the training loop only.",
    )
    topographic_error: float | None = Field(
        default=None,
        ge=0.0,
        le=1.0,
        description="Share of inputs whose two closest units are not lattice neighbours.",
    )
    version: str = Field(default=__version__, description="Package version that wrote the map.")
    created_at: str = Field(default_factory=timestamp)

    @field_validator("created_at", mode="before")
    @classmethod
    def format_created_at(cls, value):
        """(De)serialisation function for `created_at` timestamp."""
        if isinstance(value, str):
            return value
        return value.isoformat()


def as_float_array(value) -> np.ndarray:
    """Coerce a sequence to a contiguous float64 array."""
    return np.ascontiguousarray(value, dtype=np.float64)
