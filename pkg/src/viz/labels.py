"""
Functions for labelling map nodes with severities and terms.
"""

from collections import Counter

import numpy as np

from .. import exceptions
from ..entities import (
    BmuResult,
    Codebook,
    Document,
    NodeDecoration,
    NodeSeverity,
    Severity,
    Vocabulary,
)
from ..som import hit_counts
from .colors import similarity_colors

__all__ = ["node_labels", "top_terms", "decorate"]


def node_labels(
    assignments: list[BmuResult],
    docs: list[Document],
    units: int,
) -> list[NodeSeverity]:
    """
    Label every unit by a simple majority vote over its documents' severities.

    Parameters
    ----------
    assignments : list[BmuResult]
        Best matching unit of each document.
    docs : list[Document]
        Documents in the same order as the assignments.
    units : int
        Number of map units.

    Returns
    -------
    list[NodeSeverity]
        One label per unit: the majority label, `mixed` on an exact tie and `none`
        when no labelled document is mapped to the unit.
    """
    if len(assignments) != len(docs):
        raise ValueError("there must be one assignment per document")
    votes = [Counter() for _ in range(units)]
    for assignment, doc in zip(assignments, docs):
        if doc.severity is not None:
            votes[assignment.index][doc.severity] += 1
    labels = []
    for counter in votes:
        moderate, severe = counter[Severity.MODERATE], counter[Severity.SEVERE]
        if moderate == severe == 0:
            labels.append(NodeSeverity.NONE)
        elif moderate == severe:
            labels.append(NodeSeverity.MIXED)
        elif severe > moderate:
            labels.append(NodeSeverity.SEVERE)
        else:
            labels.append(NodeSeverity.MODERATE)
    return labels


def top_terms(cb: Codebook, vocab: Vocabulary, k: int) -> list[list[tuple[str, float]]]:
    """
    Get the k highest-weighted terms of every prototype.

    Parameters
    ----------
    cb : Codebook
        Trained codebook.
    vocab : Vocabulary
        Vocabulary matching the codebook dimension.
    k : int
        Number of terms per unit.

    Returns
    -------
    list[list[tuple[str, float]]]
        Per unit, up to k nonzero (term, weight) pairs by descending weight, ties
        broken by term order.
    """
    if len(vocab) != cb.dim:
        raise exceptions.DimensionMismatch(
            f"vocabulary has {len(vocab)} terms, codebook dimension is {cb.dim}"
        )
    if k < 1:
        raise ValueError("k must be positive")
    # terms are sorted, so the column index orders ties lexicographically
    columns = np.arange(cb.dim)
    result = []
    for weights in cb.weights:
        order = np.lexsort((columns, -weights))
        chosen = [i for i in order if weights[i] != 0][:k]
        result.append([(vocab.terms[i], float(weights[i])) for i in chosen])
    return result


def decorate(
    cb: Codebook,
    assignments: list[BmuResult],
    docs: list[Document],
    vocab: Vocabulary | None = None,
    k: int = 5,
) -> list[NodeDecoration]:
    """
    Combine colours, severity labels, hit counts and top terms per unit.

    Parameters
    ----------
    cb : Codebook
        Trained codebook.
    assignments : list[BmuResult]
        Best matching unit of each document.
    docs : list[Document]
        Documents in the same order as the assignments.
    vocab : Vocabulary | None
        Vocabulary for top terms, no terms are extracted if None.
    k : int
        Number of top terms per unit.

    Returns
    -------
    list[NodeDecoration]
        One decoration per unit in flat index order.
    """
    colors = similarity_colors(cb)
    labels = node_labels(assignments, docs, cb.nn)
    counts = hit_counts(assignments, cb.nn)
    terms = top_terms(cb, vocab, k) if vocab is not None else [[] for _ in range(cb.nn)]
    return [
        NodeDecoration(
            unit_index=i,
            color=tuple(int(c) for c in colors[i]),
            severity_label=labels[i],
            doc_count=int(counts[i]),
            top_terms=terms[i],
        )
        for i in range(cb.nn)
    ]
