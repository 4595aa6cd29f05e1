"""
Dataclasses used to define command parameters.
"""

import os
from pathlib import Path
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, field_validator, model_validator

from .. import exceptions
from .utils import Engine, Study, Weighting

__all__ = ["RunConfig", "BenchConfig", "default_workers", "default_seed"]


def _from_environment(name: str, default: int) -> int:
    """Read a nonnegative integer setting from the environment."""
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        number = int(value)
    except ValueError as e:
        raise exceptions.UsageError(f"{name} must be an integer, got '{value}'") from e
    if number < 0:
        raise exceptions.UsageError(f"{name} must not be negative, got {number}")
    return number


def default_workers() -> int:
    """
    Get the default worker count.

    Returns
    -------
    int
        `SOM_WORKERS` if set, otherwise the number of available processors.

    Raises
    ------
    UsageError
        If `SOM_WORKERS` is not a positive integer.
    """
    workers = _from_environment("SOM_WORKERS", os.cpu_count() or 1)
    if workers < 1:
        raise exceptions.UsageError("SOM_WORKERS must be at least 1")
    return workers


def default_seed() -> int:
    """Get the default seed, `SOM_SEED` if set, otherwise 0."""
    return _from_environment("SOM_SEED", 0)


class RunConfig(BaseModel):
    """Settings shared by the pipeline commands, merged from flags, config file and environment."""

    input: Path | None = Field(default=None)
    output: Path | None = Field(default=None)
    corpus: Path | None = Field(default=None, description="Corpus file for labels and ids.")
    dtm: Path | None = Field(default=None, description="DTM file for assignment.")
    weighting: Weighting = Field(default=Weighting.TFIDF)
    stem: bool = Field(default=False)
    stopwords: Path | None = Field(default=None, description="One stopword per line.")
    min_token_len: int = Field(default=3, ge=1)
    rows: int | None = Field(default=None, ge=1)
    cols: int | None = Field(default=None, ge=1)
    iters: int | None = Field(default=None, ge=0)
    alpha0: float = Field(default=0.1, gt=0.0, le=1.0)
    seed: int = Field(default_factory=default_seed, ge=0)
    engine: Engine = Field(default=Engine.SERIAL)
    workers: int = Field(default_factory=default_workers)
    cell_size: float = Field(default=40.0, gt=0.0)
    show_counts: bool = Field(default=False)
    top_k: int = Field(default=5, ge=1)

    @field_validator("weighting", mode="before")
    @classmethod
    def from_lowercase(cls, value):
        """Accept `tf` and `tfidf` as spelled on the command line."""
        if isinstance(value, str):
            return value.upper()
        return value

    @model_validator(mode="after")
    def check_overrides(self) -> Self:
        """Map overrides are either all absent or all present."""
        overrides = [self.rows, self.cols, self.iters]
        if any(x is not None for x in overrides) and any(x is None for x in overrides):
            raise ValueError("--rows, --cols and --iters must be given together")
        return self

    @property
    def has_overrides(self) -> bool:
        """Whether the map geometry is set explicitly."""
        return self.rows is not None


class BenchConfig(BaseModel):
    """Settings of the benchmark command."""

    study: Study = Field(default=Study.PARITY)
    output: Path | None = Field(default=None)
    dataset: str = Field(default="small", description="Synthetic dataset preset.")
    sides: list[int] = Field(default=[16, 32, 64, 128])
    dim: int = Field(default=64, ge=1)
    iters: int | None = Field(default=None, ge=1)
    seed: int = Field(default_factory=default_seed, ge=0)
    workers: int = Field(default_factory=default_workers)

    @field_validator("sides", mode="before")
    @classmethod
    def split_sides(cls, value):
        """Accept a comma-separated list."""
        if isinstance(value, str):
            return [int(x) for x in value.split(",") if x.strip()]
        return value

    @model_validator(mode="after")
    def check_sides(self) -> Self:
        """Map sides must be strictly ascending."""
        if not self.sides or any(a >= b for a, b in zip(self.sides, self.sides[1:])):
            raise ValueError("--sides must be a non-empty ascending list")
        return self
