"""
The `viz` command: colour, label and render a trained map as SVG with a JSON decoration dump.
"""

import logging
from argparse import Namespace
from pathlib import Path

from .. import exceptions, storage
from ..entities import Document, RenderOptions, RunConfig
from ..som import assign
from ..viz import decorate, render_svg
from .base import add_config_argument, resolve

__all__ = ["add_parser", "run"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("viz", help="Render a trained map to SVG.")
    parser.add_argument("--input", default=None, help="Map file written by train.")
    parser.add_argument("--dtm", default=None, help="DTM file for top terms and reassignment.")
    parser.add_argument("--corpus", default=None, help="Corpus file providing severity labels.")
    parser.add_argument("--output", default=None, help="SVG file, decorations go next to it.")
    parser.add_argument("--cell-size", dest="cell_size", type=float, default=None)
    parser.add_argument("--show-counts", dest="show_counts", action="store_true", default=None)
    parser.add_argument("--top-k", dest="top_k", type=int, default=None, help="Top terms per unit.")
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def run(args: Namespace) -> int:
    """Decorate and render the map."""
    config = resolve(args, RunConfig)
    if config.input is None or config.output is None:
        raise exceptions.UsageError("viz requires --input and --output")
    trained = storage.read_map(config.input)
    assignments, vocabulary = trained.assignments, None
    if config.dtm is not None:
        dtm = storage.read_dtm(config.dtm)
        assignments, vocabulary = assign(dtm, trained.codebook), dtm.vocabulary
    if config.corpus is not None:
        documents = storage.read_corpus(config.corpus).documents
    else:
        documents = [Document(id=str(i), text="") for i in range(len(assignments))]
    if len(documents) != len(assignments):
        raise exceptions.DimensionMismatch(
            f"{len(documents)} documents for {len(assignments)} assignments"
        )

    decorations = decorate(trained.codebook, assignments, documents, vocabulary, k=config.top_k)
    options = RenderOptions(cell_size=config.cell_size, show_counts=config.show_counts)
    output = Path(config.output)
    output.write_text(render_svg(trained.geometry, decorations, options), encoding="utf-8")
    storage.write_decorations(decorations, output.with_suffix(".json"))
    logger.info("wrote %s and its decorations", output)
    print(f"units: {len(decorations)}, svg: {output}, decorations: {output.with_suffix('.json')}")
    return 0
