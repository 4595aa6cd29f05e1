"""
Functions for normalising complaint text into token lists.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from ..entities import Document, TokenizerConfig

__all__ = [
    "tokenize",
    "tokenize_corpus",
    "load_stopwords",
    "default_stopwords",
    "stem",
]

logger = logging.getLogger(__name__)

# runs of letters only, digits and punctuation act as separators
_TOKEN_RE = re.compile(r"[^\W\d_]+")
_SUFFIXES = ("ing", "ed", "s")
_MIN_STEM_LEN = 3


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """
    Read a stopword list with one word per line.

    Parameters
    ----------
    path : str | Path | None
        A plain-text file. If None, the bundled English list is used.

    Returns
    -------
    frozenset[str]
        Lowercase stopwords. Blank lines and lines starting with '#' are skipped.
    """
    if path is None:
        text = resources.files(__package__).joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = (line.strip().lower() for line in text.splitlines())
    return frozenset(word for word in words if word and not word.startswith("#"))


def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list."""
    return load_stopwords()


def stem(token: str) -> str:
    """
    Strip the suffixes 'ing', 'ed' and 's' while the remaining stem keeps at least
    three characters.

    Stripping is repeated until no rule applies, so the result is a fixed point.

    Parameters
    ----------
    token : str
        A lowercase token.

    Returns
    -------
    str
        The stemmed token.
    """
    changed = True
    while changed:
        changed = False
        for suffix in _SUFFIXES:
            if token.endswith(suffix) and len(token) - len(suffix) >= _MIN_STEM_LEN:
                token = token[: -len(suffix)]
                changed = True
                break
    return token


def tokenize(text: str, config: TokenizerConfig | None = None) -> list[str]:
    """
    Lowercase a text, split it into alphabetic tokens and filter them.

    Parameters
    ----------
    text : str
        Arbitrary UTF-8 text.
    config : TokenizerConfig | None
        Stopwords, minimum token length and stemming switch. If None, the bundled
        stopwords and the defaults are used.

    Returns
    -------
    tokens : list[str]
        Tokens in text order, possibly empty.
    """
    if config is None:
        config = TokenizerConfig(stopwords=default_stopwords())
    tokens = _TOKEN_RE.findall(text.lower())
    if config.stem:
        # stopwords are matched before and after stemming
        tokens = [stem(token) for token in tokens if token not in config.stopwords]
    tokens = [
        token
        for token in tokens
        if len(token) >= config.min_token_len and token not in config.stopwords
    ]
    return tokens


def tokenize_corpus(
    documents: list[Document],
    config: TokenizerConfig | None = None,
    workers: int = 1,
) -> list[list[str]]:
    """
    Tokenize documents, optionally on a thread pool, preserving document order.

    Parameters
    ----------
    documents : list[Document]
        Documents to tokenize.
    config : TokenizerConfig | None
        Tokenizer settings shared by all documents.
    workers : int
        Number of threads, 1 tokenizes in the calling thread.

    Returns
    -------
    list[list[str]]
        One token list per document, in input order.
    """
    if config is None:
        config = TokenizerConfig(stopwords=default_stopwords())
    texts = [document.text for document in documents]
    if workers <= 1:
        token_lists = [tokenize(text, config) for text in texts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            token_lists = list(executor.map(lambda text: tokenize(text, config), texts))
    empty = sum(1 for tokens in token_lists if not tokens)
    if empty:
        logger.warning("%d of %d documents have no tokens left", empty, len(texts))
    return token_lists
