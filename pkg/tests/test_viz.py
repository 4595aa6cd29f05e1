"""
Tests for similarity colours, node labels, top terms and SVG rendering.
"""

import numpy as np
import pytest
from lxml import etree
from pytest import mark
from scipy.stats import spearmanr

from src import exceptions
from src.entities import (
    BmuResult,
    Codebook,
    Document,
    MapGeometry,
    NodeDecoration,
    NodeSeverity,
    RenderOptions,
    TrainingSchedule,
    Vocabulary,
)
from src.som import map_geometry, train_serial
from src.viz import decorate, node_labels, render_svg, similarity_colors, top_terms

SVG = "{http://www.w3.org/2000/svg}"


def pairwise(values: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(len(values), k=1)
    return np.linalg.norm(values[i].astype(float) - values[j].astype(float), axis=1)


def bmu(index: int, ncols: int = 3) -> BmuResult:
    return BmuResult(index=index, coords=divmod(index, ncols), distance=0.0)


def test_colors_identical_prototypes():
    cb = Codebook(nrows=2, ncols=3, weights=np.tile([0.2, 0.4, 0.1], (6, 1)))
    colors = similarity_colors(cb)
    assert colors.shape == (6, 3)
    assert colors.dtype == np.uint8
    assert (colors == 128).all()


def test_colors_single_unit():
    cb = Codebook(nrows=1, ncols=1, weights=[[0.3, 0.7]])
    assert similarity_colors(cb).tolist() == [[128, 128, 128]]


def test_colors_collinear_prototypes():
    t = np.linspace(0.0, 1.0, 6)
    weights = np.outer(t, [1.0, 2.0, 0.5, 0.0])
    colors = similarity_colors(Codebook(nrows=2, ncols=3, weights=weights))
    assert colors[:, 0].min() == 0
    assert colors[:, 0].max() == 255
    assert (colors[:, 1:] == 128).all()


@mark.parametrize("seed", range(3))
def test_colors_preserve_similarity(seed: int):
    weights = np.random.default_rng(seed).random((20, 10))
    colors = similarity_colors(Codebook(nrows=4, ncols=5, weights=weights))
    correlation, _ = spearmanr(pairwise(weights), pairwise(colors))
    assert correlation > 0


def test_colors_on_trained_map(clusters):
    data, _ = clusters
    g = map_geometry(data.m, data)
    trained = train_serial(data, g, TrainingSchedule.for_geometry(g))
    cb = trained.codebook
    colors = similarity_colors(cb)
    prototype_distances = pairwise(cb.weights)
    color_distances = pairwise(colors)
    correlation, _ = spearmanr(prototype_distances, color_distances)
    assert correlation > 0
    # among lattice neighbours, similar prototypes get closer colours than dissimilar ones
    lattice = cb.lattice
    i, j = np.triu_indices(cb.nn, k=1)
    adjacent = np.abs(np.linalg.norm(lattice[i] - lattice[j], axis=1) - 1.0) <= 1e-9
    near, far = prototype_distances[adjacent], color_distances[adjacent]
    order = np.argsort(near)
    decile = max(1, len(order) // 10)
    assert far[order[:decile]].mean() < far[order[-decile:]].mean()


@mark.parametrize(
    "severities,expected",
    [
        ([2, 2, 1], NodeSeverity.SEVERE),
        ([1, 2], NodeSeverity.MIXED),
        ([1, 1, None], NodeSeverity.MODERATE),
        ([None, None], NodeSeverity.NONE),
        ([], NodeSeverity.NONE),
    ],
)
def test_node_labels(severities: list, expected: NodeSeverity):
    docs = [Document(id=str(i), text="", severity=s) for i, s in enumerate(severities)]
    labels = node_labels([bmu(1) for _ in docs], docs, units=3)
    assert labels == [NodeSeverity.NONE, expected, NodeSeverity.NONE]


def test_node_labels_ignore_document_order():
    docs = [Document(id=str(i), text="", severity=1 + i % 2) for i in range(9)]
    assignments = [bmu(i % 3) for i in range(9)]
    labels = node_labels(assignments, docs, units=3)
    assert labels == node_labels(assignments[::-1], docs[::-1], units=3)


@mark.parametrize(
    "weights,k,expected",
    [
        ([0.0, 0.9, 0.0], 3, [("loan", 0.9)]),
        ([0.2, 0.5, 0.2], 2, [("loan", 0.5), ("atm", 0.2)]),
        ([0.2, 0.5, 0.2], 5, [("loan", 0.5), ("atm", 0.2), ("rate", 0.2)]),
        ([0.0, 0.0, 0.0], 2, []),
    ],
)
def test_top_terms(weights: list[float], k: int, expected: list):
    vocab = Vocabulary(terms=["atm", "loan", "rate"], doc_frequency=[1, 1, 1])
    cb = Codebook(nrows=1, ncols=1, weights=[weights])
    assert top_terms(cb, vocab, k) == [expected]


def test_top_terms_match_sort_oracle():
    rng = np.random.default_rng(0)
    terms = [f"term{i:02d}" for i in range(30)]
    vocab = Vocabulary(terms=terms, doc_frequency=[1] * 30)
    cb = Codebook(nrows=2, ncols=2, weights=rng.integers(0, 4, (4, 30)) / 4)
    for weights, result in zip(cb.weights, top_terms(cb, vocab, 7)):
        oracle = sorted(((t, w) for t, w in zip(terms, weights) if w != 0), key=lambda p: (-p[1], p[0]))
        assert result == oracle[:7]


def test_top_terms_dimension_mismatch():
    vocab = Vocabulary(terms=["a", "b"], doc_frequency=[1, 1])
    with pytest.raises(exceptions.DimensionMismatch):
        top_terms(Codebook(nrows=1, ncols=1, weights=[[0.1, 0.2, 0.3]]), vocab, 2)


def test_decorate():
    cb = Codebook(nrows=1, ncols=3, weights=[[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])
    vocab = Vocabulary(terms=["atm", "loan"], doc_frequency=[2, 2])
    docs = [
        Document(id="a", text="", severity=2),
        Document(id="b", text="", severity=2),
        Document(id="c", text="", severity=1),
    ]
    decorations = decorate(cb, [bmu(0), bmu(0), bmu(2)], docs, vocab, k=1)
    assert [d.doc_count for d in decorations] == [2, 0, 1]
    assert [d.severity_label for d in decorations] == [
        NodeSeverity.SEVERE,
        NodeSeverity.NONE,
        NodeSeverity.MODERATE,
    ]
    assert decorations[0].top_terms == [("atm", 1.0)]
    assert decorations[2].top_terms == [("loan", 1.0)]


def test_decoration_invariants():
    with pytest.raises(ValueError):
        NodeDecoration(unit_index=0, color=(0, 0, 256))
    with pytest.raises(ValueError):
        NodeDecoration(unit_index=0, color=(0, 0, 0), top_terms=[("a", 0.1), ("b", 0.2)])
    assert NodeDecoration(unit_index=0, color=(255, 16, 0)).hex_color == "#ff1000"


def decorations_for(g: MapGeometry, label: NodeSeverity = NodeSeverity.NONE) -> list[NodeDecoration]:
    return [
        NodeDecoration(unit_index=i, color=(10, 20, 30), severity_label=label, doc_count=i)
        for i in range(g.nn)
    ]


def test_render_single_unit():
    g = MapGeometry.from_sides(1, 1, 0)
    root = etree.fromstring(render_svg(g, decorations_for(g)).encode("utf-8"))
    assert root.tag == f"{SVG}svg"
    polygons = root.findall(f".//{SVG}polygon")
    assert len(polygons) == 1
    assert polygons[0].get("fill") == "#0a141e"
    assert polygons[0].get("stroke") == "none"


@mark.parametrize("nrows,ncols", [(2, 2), (3, 5), (9, 11)])
def test_render_polygon_count(nrows: int, ncols: int):
    g = MapGeometry.from_sides(nrows, ncols, 0)
    svg = render_svg(g, decorations_for(g, NodeSeverity.SEVERE), RenderOptions(show_counts=True))
    root = etree.fromstring(svg.encode("utf-8"))
    polygons = root.findall(f".//{SVG}polygon")
    assert len(polygons) == g.nn
    assert [p.get("id") for p in polygons] == [f"unit-{i}" for i in range(g.nn)]
    assert all(p.get("stroke-width") == "3" for p in polygons)
    assert [t.text for t in root.findall(f".//{SVG}text")] == [str(i) for i in range(g.nn)]


def test_render_offsets_odd_rows():
    g = MapGeometry.from_sides(2, 2, 0)
    options = RenderOptions(cell_size=40.0)
    root = etree.fromstring(render_svg(g, decorations_for(g), options).encode("utf-8"))

    def centre_x(polygon) -> float:
        xs = [float(point.split(",")[0]) for point in polygon.get("points").split()]
        return (min(xs) + max(xs)) / 2

    polygons = root.findall(f".//{SVG}polygon")
    assert centre_x(polygons[2]) - centre_x(polygons[0]) == pytest.approx(20.0, abs=1e-2)
    assert centre_x(polygons[1]) - centre_x(polygons[0]) == pytest.approx(40.0, abs=1e-2)


def test_render_border_styles():
    g = MapGeometry.from_sides(1, 3, 0)
    labels = [NodeSeverity.MODERATE, NodeSeverity.MIXED, NodeSeverity.SEVERE]
    decorations = [
        NodeDecoration(unit_index=i, color=(0, 0, 0), severity_label=label)
        for i, label in enumerate(labels)
    ]
    root = etree.fromstring(render_svg(g, decorations).encode("utf-8"))
    polygons = root.findall(f".//{SVG}polygon")
    assert polygons[0].get("stroke-width") == "1"
    assert polygons[1].get("stroke-dasharray") == "4 2"
    assert polygons[2].get("stroke-width") == "3"


def test_render_is_deterministic():
    g = MapGeometry.from_sides(3, 4, 0)
    decorations = decorations_for(g)
    assert render_svg(g, decorations) == render_svg(g, decorations[::-1])


def test_render_requires_every_unit():
    g = MapGeometry.from_sides(2, 2, 0)
    with pytest.raises(ValueError):
        render_svg(g, decorations_for(g)[:3])
