"""
Functions for building TF and TF-IDF document-term matrices.
"""

import logging
import math

import numpy as np
from scipy import sparse

from .. import exceptions
from ..entities import DocTermMatrix, Vocabulary, Weighting

__all__ = ["tf_matrix", "idf", "tfidf_matrix", "l2_normalize"]

logger = logging.getLogger(__name__)


def tf_matrix(token_lists: list[list[str]], vocab: Vocabulary) -> DocTermMatrix:
    """
    Count raw term frequencies per document.

    Parameters
    ----------
    token_lists : list[list[str]]
        One token list per document.
    vocab : Vocabulary
        Vocabulary built from the same token lists.

    Returns
    -------
    DocTermMatrix
        Matrix with entry (d, t) equal to the count of term t in document d.
    """
    index = vocab.index
    indptr, indices = [0], []
    for tokens in token_lists:
        for token in tokens:
            try:
                indices.append(index[token])
            except KeyError as e:
                raise exceptions.UnknownTerm(f"'{token}' is absent from the vocabulary") from e
        indptr.append(len(indices))
    data = np.ones(len(indices), dtype=np.float64)
    matrix = sparse.csr_matrix(
        (data, np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(token_lists), len(vocab)),
    )
    # duplicate (row, column) pairs are summed into counts
    matrix.sum_duplicates()
    return DocTermMatrix(matrix=matrix, weighting=Weighting.TF, vocabulary=vocab)


def idf(doc_frequency: int, n: int) -> float:
    """
    Inverse document frequency of a term, ln(N / df).

    Parameters
    ----------
    doc_frequency : int
        Number of documents containing the term.
    n : int
        Number of documents in the corpus.

    Returns
    -------
    float
        A nonnegative weight, 0 for a term present in every document.
    """
    if not 1 <= doc_frequency <= n:
        raise exceptions.InvalidFrequency(
            f"document frequency {doc_frequency} is outside [1, {n}]"
        )
    return math.log(n / doc_frequency)


def tfidf_matrix(tf: DocTermMatrix, vocab: Vocabulary) -> DocTermMatrix:
    """
    Weight term frequencies by inverse document frequency.

    Parameters
    ----------
    tf : DocTermMatrix
        Raw term frequency matrix.
    vocab : Vocabulary
        Vocabulary whose document frequencies are used.

    Returns
    -------
    DocTermMatrix
        TF-IDF matrix. Entries whose IDF is 0 are dropped rather than stored as zeros.
    """
    if tf.weighting != Weighting.TF:
        raise ValueError("TF-IDF can only be computed from a TF matrix")
    weights = np.array([idf(df, tf.m) for df in vocab.doc_frequency], dtype=np.float64)
    matrix = tf.matrix.copy()
    matrix.data = matrix.data * weights[matrix.indices]
    return DocTermMatrix(matrix=matrix, weighting=Weighting.TFIDF, vocabulary=vocab)


def l2_normalize(dtm: DocTermMatrix) -> tuple[DocTermMatrix, int]:
    """
    Scale every nonzero row to unit Euclidean length.

    Parameters
    ----------
    dtm : DocTermMatrix
        Matrix to normalise.

    Returns
    -------
    normalized : DocTermMatrix
        Matrix with unit-length nonzero rows; all-zero rows stay zero.
    zero_rows : int
        Number of all-zero rows, which cannot be trained on.
    """
    norms = dtm.row_norms()
    zero_rows = int(np.count_nonzero(norms == 0))
    if zero_rows:
        logger.warning("%d of %d rows are all zero after weighting", zero_rows, dtm.m)
    matrix = dtm.matrix.copy()
    row_of_entry = np.repeat(np.arange(dtm.m), np.diff(matrix.indptr))
    matrix.data = matrix.data / norms[row_of_entry]
    normalized = DocTermMatrix(
        matrix=matrix,
        weighting=dtm.weighting,
        normalized=True,
        vocabulary=dtm.vocabulary,
    )
    return normalized, zero_rows
