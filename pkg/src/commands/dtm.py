"""
The `dtm` command: build a normalised TF or TF-IDF document-term matrix from a corpus.
"""

import logging
from argparse import Namespace

from .. import exceptions, storage
from ..corpus import l2_normalize, tf_matrix, tfidf_matrix
from ..entities import RunConfig, Weighting
from .base import add_config_argument, resolve

__all__ = ["add_parser", "run"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("dtm", help="Build a document-term matrix.")
    parser.add_argument("--input", default=None, help="Corpus file written by ingest.")
    parser.add_argument("--output", default=None, help="DTM file to write.")
    parser.add_argument(
        "--weighting",
        type=str.lower,
        choices=["tf", "tfidf"],
        default=None,
        help="Term weighting, tfidf by default.",
    )
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def run(args: Namespace) -> int:
    """Vectorise the corpus and write the matrix."""
    config = resolve(args, RunConfig)
    if config.input is None or config.output is None:
        raise exceptions.UsageError("dtm requires --input and --output")
    corpus = storage.read_corpus(config.input)
    dtm = tf_matrix(corpus.tokens, corpus.vocabulary)
    if config.weighting == Weighting.TFIDF:
        dtm = tfidf_matrix(dtm, corpus.vocabulary)
    dtm, zero_rows = l2_normalize(dtm)
    storage.write_dtm(dtm, config.output)
    logger.info("wrote %d×%d %s matrix to %s", dtm.m, dtm.n, dtm.weighting, config.output)
    print(f"shape: {dtm.m}×{dtm.n}, nnz: {dtm.nnz}, weighting: {dtm.weighting}, zero rows: {zero_rows}")
    return 0
