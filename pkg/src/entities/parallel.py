"""
Entity (model) definitions used by the data-parallel engine.
"""

import math

from pydantic import BaseModel, Field

__all__ = ["UnitPartition", "Candidate"]


class UnitPartition(BaseModel):
    """A contiguous range of map units [start, end) owned by one worker."""

    worker_id: int = Field(ge=0)
    start: int = Field(ge=0)
    end: int = Field(ge=0)

    @property
    def size(self) -> int:
        """Number of units in the range."""
        return self.end - self.start

    @property
    def is_empty(self) -> bool:
        """Whether the worker owns no units."""
        return self.end <= self.start


class Candidate(BaseModel):
    """A best matching unit candidate found by one worker."""

    distance: float = Field(default=math.inf, ge=0.0)
    unit_index: int = Field(default=-1, ge=-1, description="Flat index, -1 for padding.")

    @property
    def is_sentinel(self) -> bool:
        """Whether the candidate is padding."""
        return self.unit_index < 0

    @property
    def key(self) -> tuple[float, float]:
        """Ordering key: lower distance wins, then lower index; padding always loses."""
        if self.is_sentinel:
            return math.inf, math.inf
        return self.distance, self.unit_index
