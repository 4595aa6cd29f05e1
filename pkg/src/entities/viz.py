"""
Entity (model) definitions for decorated map nodes and rendering options.
"""

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator

from .utils import NodeSeverity

__all__ = ["NodeDecoration", "RenderOptions"]


class NodeDecoration(BaseModel):
    """Everything drawn on or reported for one map unit."""

    unit_index: int = Field(ge=0)
    color: tuple[int, int, int] = Field(description="RGB, each channel in [0, 255].")
    severity_label: NodeSeverity = Field(default=NodeSeverity.NONE)
    doc_count: int = Field(default=0, ge=0, description="Documents mapped to the unit.")
    top_terms: list[tuple[str, float]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_values(self) -> Self:
        """Ensure channels are bytes and top terms are sorted by descending weight."""
        if any(not 0 <= channel <= 255 for channel in self.color):
            raise ValueError("color channels must be in [0, 255]")
        weights = [weight for _, weight in self.top_terms]
        if any(a < b for a, b in zip(weights, weights[1:])):
            raise ValueError("top terms must be sorted by descending weight")
        return self

    @property
    def hex_color(self) -> str:
        """Color as an SVG hex string."""
        return "#{:02x}{:02x}{:02x}".format(*self.color)


class RenderOptions(BaseModel):
    """Settings for rendering a map to SVG."""

    cell_size: float = Field(default=40.0, gt=0.0, description="Pixels per lattice unit.")
    margin: float = Field(default=10.0, ge=0.0)
    show_counts: bool = Field(default=False, description="Overlay document counts.")
    title: str | None = Field(default=None)
