"""
The `ingest` command: parse complaints from JSON Lines and persist their tokens and vocabulary.
"""

import logging
from argparse import Namespace

from .. import exceptions, storage
from ..corpus import build_vocabulary, load_stopwords, tokenize_corpus
from ..entities import Corpus, RunConfig, TokenizerConfig
from .base import add_config_argument, resolve

__all__ = ["add_parser", "run"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("ingest", help="Tokenize a JSONL file of complaints.")
    parser.add_argument("--input", default=None, help="JSONL file with id, text and severity.")
    parser.add_argument("--output", default=None, help="Corpus file to write.")
    parser.add_argument("--stopwords", default=None, help="Stopword file, one per line.")
    parser.add_argument("--min-token-len", dest="min_token_len", type=int, default=None)
    parser.add_argument("--stem", action="store_true", default=None, help="Strip simple suffixes.")
    parser.add_argument("--workers", type=int, default=None, help="Tokenizer threads.")
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def run(args: Namespace) -> int:
    """Ingest documents and write the corpus file."""
    config = resolve(args, RunConfig)
    if config.input is None or config.output is None:
        raise exceptions.UsageError("ingest requires --input and --output")
    documents = storage.read_documents(config.input)
    tokenizer = TokenizerConfig(
        stopwords=load_stopwords(config.stopwords),
        min_token_len=config.min_token_len,
        stem=config.stem,
    )
    tokens = tokenize_corpus(documents, tokenizer, workers=config.workers)
    corpus = Corpus(
        documents=documents,
        tokens=tokens,
        vocabulary=build_vocabulary(tokens),
        tokenizer=tokenizer,
    )
    storage.write_corpus(corpus, config.output)
    logger.info("wrote corpus to %s", config.output)
    print(
        f"documents: {len(corpus.documents)}, terms: {len(corpus.vocabulary)}, "
        f"empty: {corpus.empty_count}, labelled: {corpus.labelled_count}"
    )
    return 0
