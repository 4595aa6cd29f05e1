"""
The `assign` command: export the best matching unit of every document as CSV.
"""

import logging
from argparse import Namespace

from .. import exceptions, storage
from ..entities import RunConfig
from ..som import assign
from .base import add_config_argument, resolve

__all__ = ["add_parser", "run"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("assign", help="Write document-to-unit assignments as CSV.")
    parser.add_argument("--input", default=None, help="Map file written by train.")
    parser.add_argument("--dtm", default=None, help="DTM file to assign, training rows if omitted.")
    parser.add_argument("--corpus", default=None, help="Corpus file providing document ids.")
    parser.add_argument("--output", default=None, help="CSV file to write.")
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def run(args: Namespace) -> int:
    """Assign documents and write the CSV."""
    config = resolve(args, RunConfig)
    if config.input is None or config.output is None:
        raise exceptions.UsageError("assign requires --input and --output")
    trained = storage.read_map(config.input)
    assignments = trained.assignments
    if config.dtm is not None:
        assignments = assign(storage.read_dtm(config.dtm), trained.codebook)
    ids = None
    if config.corpus is not None:
        ids = [document.id for document in storage.read_corpus(config.corpus).documents]
    df = storage.write_assignments(assignments, config.output, ids=ids)
    logger.info("wrote %d assignments to %s", len(df), config.output)
    print(f"documents: {len(df)}, units hit: {df['unit'].nunique()} of {trained.codebook.nn}")
    return 0
