"""
Rendering of decorated hexagonal maps to SVG.
"""

import math

from lxml import etree

from ..entities import MapGeometry, NodeDecoration, NodeSeverity, RenderOptions
from ..som import hex_position

__all__ = ["render_svg", "hexagon_points"]

SVG_NS = "http://www.w3.org/2000/svg"

# severity is drawn as the hexagon border, the fill carries the similarity colour
BORDERS = {
    NodeSeverity.SEVERE: {"stroke": "#000000", "stroke-width": "3"},
    NodeSeverity.MODERATE: {"stroke": "#000000", "stroke-width": "1"},
    NodeSeverity.MIXED: {"stroke": "#000000", "stroke-width": "2", "stroke-dasharray": "4 2"},
    NodeSeverity.NONE: {"stroke": "none"},
}


def _fmt(value: float) -> str:
    return f"{value:.3f}".rstrip("0").rstrip(".") or "0"


def hexagon_points(cx: float, cy: float, radius: float) -> list[tuple[float, float]]:
    """
    Vertices of a pointy-top hexagon.

    Parameters
    ----------
    cx, cy : float
        Centre.
    radius : float
        Distance from the centre to a vertex.

    Returns
    -------
    list[tuple[float, float]]
        Six vertices, starting at the top and going clockwise.
    """
    angles = (math.radians(-90 + 60 * k) for k in range(6))
    return [(cx + radius * math.cos(a), cy + radius * math.sin(a)) for a in angles]


def render_svg(
    geometry: MapGeometry,
    decorations: list[NodeDecoration],
    options: RenderOptions | None = None,
) -> str:
    """
    Render a map as one hexagon per unit.

    Parameters
    ----------
    geometry : MapGeometry
        Lattice shape.
    decorations : list[NodeDecoration]
        One decoration per unit.
    options : RenderOptions | None
        Cell size, margin and overlays.

    Returns
    -------
    str
        A standalone SVG 1.1 document. Elements are emitted in flat index order.
    """
    options = options or RenderOptions()
    if len(decorations) != geometry.nn:
        raise ValueError("decorations must cover every unit")
    decorations = sorted(decorations, key=lambda d: d.unit_index)

    cell = options.cell_size
    # adjacent centres are one cell apart, the pointy-top width is √3 × radius
    radius = cell / math.sqrt(3)
    offset_x = options.margin + cell / 2
    offset_y = options.margin + radius
    width = 2 * options.margin + cell * (geometry.ncols + (0.5 if geometry.nrows > 1 else 0))
    height = 2 * options.margin + 2 * radius + (geometry.nrows - 1) * cell * math.sqrt(3) / 2

    svg = etree.Element(
        f"{{{SVG_NS}}}svg",
        nsmap={None: SVG_NS},
        version="1.1",
        width=_fmt(width),
        height=_fmt(height),
        viewBox=f"0 0 {_fmt(width)} {_fmt(height)}",
    )
    if options.title:
        etree.SubElement(svg, f"{{{SVG_NS}}}title").text = options.title
    nodes = etree.SubElement(svg, f"{{{SVG_NS}}}g", id="nodes")
    labels = etree.SubElement(svg, f"{{{SVG_NS}}}g", id="counts") if options.show_counts else None

    for decoration in decorations:
        i, j = divmod(decoration.unit_index, geometry.ncols)
        x, y = hex_position(i, j)
        cx, cy = offset_x + x * cell, offset_y + y * cell
        points = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in hexagon_points(cx, cy, radius))
        polygon = etree.SubElement(
            nodes,
            f"{{{SVG_NS}}}polygon",
            id=f"unit-{decoration.unit_index}",
            points=points,
            fill=decoration.hex_color,
        )
        for key, value in BORDERS[decoration.severity_label].items():
            polygon.set(key, value)
        if labels is not None:
            text = etree.SubElement(
                labels,
                f"{{{SVG_NS}}}text",
                x=_fmt(cx),
                y=_fmt(cy),
                **{"text-anchor": "middle", "dominant-baseline": "middle", "font-size": _fmt(cell / 3)},
            )
            text.text = str(decoration.doc_count)

    return etree.tostring(svg, xml_declaration=True, encoding="UTF-8", pretty_print=True).decode(
        "utf-8"
    )
