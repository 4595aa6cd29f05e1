"""
Entity (model) definitions for benchmark reports.
"""

from pathlib import Path

import pandas as pd
from pydantic import BaseModel, Field

from .utils import Engine

__all__ = ["BenchRow", "BenchReport", "COLUMNS"]

COLUMNS = [
    "engine",
    "dataset",
    "m",
    "n",
    "nrows",
    "ncols",
    "num_itr",
    "qe",
    "wall_seconds",
    "speedup",
    "qe_gap",
    "ratio_of_increase",
]


class BenchRow(BaseModel):
    """A single measurement of one engine on one dataset and map size."""

    engine: Engine
    dataset: str
    m: int = Field(ge=0)
    n: int = Field(ge=0)
    nrows: int = Field(ge=1)
    ncols: int = Field(ge=1)
    num_itr: int = Field(ge=0)
    qe: float = Field(ge=0.0)
    wall_seconds: float = Field(ge=0.0)
    speedup: float | None = Field(
        default=None,
        description="Serial seconds over this engine's seconds for the same configuration.",
    )
    qe_gap: float | None = Field(
        default=None,
        ge=0.0,
        description="QE difference from the serial engine relative to the serial QE.",
    )
    ratio_of_increase: float | None = Field(
        default=None,
        description="Time over the time of the previous map size for the same engine.",
    )


class BenchReport(BaseModel):
    """A table of benchmark measurements."""

    rows: list[BenchRow] = Field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """
        Convert the report to a data frame with the documented column order.

        Returns
        -------
        df : pd.DataFrame
            One row per measurement.
        """
        df = pd.DataFrame([row.model_dump(mode="json") for row in self.rows], columns=COLUMNS)
        return df

    def to_csv(self, path: str | Path) -> None:
        """Write the report to a CSV file."""
        self.to_frame().to_csv(path, index=False)

    def for_engine(self, engine: Engine) -> list[BenchRow]:
        """Rows of one engine in report order."""
        return [row for row in self.rows if row.engine == engine]
