"""
Entity (model) definitions for map geometry, codebooks, schedules and trained maps.
"""

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .base import ArrayModel, as_float_array
from .utils import Engine

__all__ = [
    "PrincipalComponents",
    "MapGeometry",
    "Codebook",
    "TrainingSchedule",
    "BmuResult",
    "TrainedMap",
]

SQRT3_2 = np.sqrt(3.0) / 2.0


class PrincipalComponents(ArrayModel):
    """The two largest eigenpairs of the sample covariance of a matrix."""

    pc1: float = Field(ge=0.0)
    pc2: float = Field(ge=0.0)
    v1: np.ndarray
    v2: np.ndarray
    mean: np.ndarray

    @field_validator("v1", "v2", "mean", mode="before")
    @classmethod
    def to_array(cls, value):
        """Store vectors as float64 arrays."""
        return as_float_array(value)


class MapGeometry(BaseModel):
    """Map size and iteration count together with the intermediates that produced them."""

    m: int = Field(ge=0, description="Input count.")
    munits: int = Field(ge=1, description="Target unit count.")
    pc1: float = Field(default=0.0, ge=0.0)
    pc2: float = Field(default=0.0, ge=0.0)
    r: float = Field(default=1.0, description="Aspect ratio of the lattice sides.")
    size1: float = Field(default=1.0)
    size2: float = Field(default=1.0)
    nrows: int = Field(ge=1)
    ncols: int = Field(ge=1)
    num_itr: int = Field(ge=0, description="Number of training iterations.")

    @model_validator(mode="after")
    def check_sides(self) -> Self:
        """Ensure rows never exceed columns."""
        if self.nrows > self.ncols:
            raise ValueError("nrows must not exceed ncols")
        return self

    @property
    def nn(self) -> int:
        """Number of map units."""
        return self.nrows * self.ncols

    @property
    def mpd(self) -> float:
        """Map units per datum."""
        return self.nn / self.m if self.m else 0.0

    @classmethod
    def from_sides(cls, nrows: int, ncols: int, num_itr: int, m: int = 0) -> Self:
        """
        Create a geometry from explicit overrides, bypassing the sizing heuristic.

        The smaller side becomes the row count.
        """
        nrows, ncols = sorted((nrows, ncols))
        return cls(
            m=m,
            munits=nrows * ncols,
            size1=nrows,
            size2=ncols,
            nrows=nrows,
            ncols=ncols,
            num_itr=num_itr,
        )


class Codebook(ArrayModel):
    """Prototype vectors of a hexagonal lattice, unit (i, j) at flat index i×ncols+j."""

    nrows: int = Field(ge=1)
    ncols: int = Field(ge=1)
    weights: np.ndarray

    @field_validator("weights", mode="before")
    @classmethod
    def to_array(cls, value):
        """Store weights as a finite float64 matrix."""
        weights = as_float_array(value)
        if weights.ndim != 2:
            raise ValueError("weights must be a matrix")
        if not np.isfinite(weights).all():
            raise ValueError("weights must be finite")
        return weights

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        """Ensure there is one prototype per unit."""
        if self.weights.shape[0] != self.nn:
            raise ValueError("weights must have one row per unit")
        return self

    @property
    def nn(self) -> int:
        """Number of map units."""
        return self.nrows * self.ncols

    @property
    def dim(self) -> int:
        """Prototype length."""
        return self.weights.shape[1]

    @property
    def lattice(self) -> np.ndarray:
        """Planar hexagonal positions of all units as an nn×2 array."""
        i, j = np.divmod(np.arange(self.nn), self.ncols)
        return np.column_stack((j + 0.5 * (i % 2), i * SQRT3_2))

    def coords(self, index: int) -> tuple[int, int]:
        """Lattice coordinates of a flat index."""
        return divmod(int(index), self.ncols)

    def copy(self) -> "Codebook":
        """A deep copy of the codebook."""
        return Codebook(nrows=self.nrows, ncols=self.ncols, weights=self.weights.copy())


class TrainingSchedule(BaseModel):
    """Learning rate and neighbourhood radius schedule with Gaussian decay."""

    alpha0: float = Field(default=0.1, gt=0.0, le=1.0, description="Initial learning rate.")
    sigma0: float = Field(default=1.0, ge=1.0, description="Initial neighbourhood radius.")
    T: int = Field(ge=0, description="Total iterations, 0 keeps the initial codebook.")
    k: float = Field(
        default=float(np.log(100.0)),
        gt=0.0,
        description="Decay constant, ln(100) ends both rates at 1% of their initial value.",
    )
    seed: int = Field(default=0, ge=0)

    @classmethod
    def for_geometry(
        cls, geometry: MapGeometry, alpha0: float = 0.1, seed: int = 0
    ) -> Self:
        """Default schedule: radius starts at half the longer side, one step per iteration."""
        sigma0 = max(1.0, max(geometry.nrows, geometry.ncols) / 2)
        return cls(alpha0=alpha0, sigma0=sigma0, T=geometry.num_itr, seed=seed)


class BmuResult(BaseModel):
    """The winning unit for an input vector."""

    index: int = Field(ge=0, description="Flat unit index.")
    coords: tuple[int, int] = Field(description="Lattice (row, column).")
    distance: float = Field(ge=0.0, description="Euclidean distance to the input.")


class TrainedMap(ArrayModel):
    """The serialisable result of a training run."""

    codebook: Codebook
    geometry: MapGeometry
    schedule: TrainingSchedule
    assignments: list[BmuResult]
    quantization_error: float = Field(ge=0.0)
    engine: Engine = Field(default=Engine.SERIAL)
    workers: int = Field(default=1, ge=1)
    wall_seconds: float = Field(default=0.0, ge=0.0)
