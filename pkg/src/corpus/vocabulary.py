"""
Functions for building a vocabulary from token lists.
"""

from collections import Counter

from .. import exceptions
from ..entities import Vocabulary

__all__ = ["build_vocabulary"]


def build_vocabulary(token_lists: list[list[str]]) -> Vocabulary:
    """
    Build a lexicographically ordered vocabulary with document frequencies.

    Parameters
    ----------
    token_lists : list[list[str]]
        One token list per document.

    Returns
    -------
    Vocabulary
        Sorted union of tokens; the frequency of a term is the number of lists
        containing it at least once. The result does not depend on document order.
    """
    frequency = Counter()
    for tokens in token_lists:
        frequency.update(set(tokens))
    if not frequency:
        raise exceptions.EmptyCorpus
    terms = sorted(frequency)
    return Vocabulary(terms=terms, doc_frequency=[frequency[term] for term in terms])
