"""
Synthetic document-term matrices standing in for non-redistributable complaint data.
"""

import numpy as np
from scipy import sparse

from .. import exceptions
from ..corpus import l2_normalize, tfidf_matrix
from ..entities import DocTermMatrix, Vocabulary, Weighting

__all__ = ["synth_corpus", "synth_dense", "load_preset", "PRESETS"]

# probability that a document uses a term of its cluster profile
TOPIC_RATE = 0.99

PRESETS = {
    "small": {"clusters": 4, "docs_per_cluster": 50, "dims": 500, "sparsity": 0.98},
    "wide": {"clusters": 3, "docs_per_cluster": 171, "dims": 3917, "sparsity": 0.995},
    "clusters": {"clusters": 3, "docs_per_cluster": 100, "dims": 300, "sparsity": 0.98},
}


def synth_corpus(
    clusters: int,
    docs_per_cluster: int,
    dims: int,
    sparsity: float = 0.98,
    seed: int = 0,
) -> tuple[DocTermMatrix, np.ndarray]:
    """
    Generate a clustered TF-IDF matrix.

    Every cluster owns a disjoint block of topic terms with fixed counts, its profile.
    Documents copy the profile of their cluster and drop a few of its terms; all
    other terms appear as rare background noise.

    Parameters
    ----------
    clusters : int
        Number of clusters, at least 1.
    docs_per_cluster : int
        Documents per cluster, at least 1.
    dims : int
        Vocabulary size, at least `clusters`.
    sparsity : float
        Probability in [0, 1) that a background term is absent from a document.
    seed : int
        Seed of the generator.

    Returns
    -------
    data : DocTermMatrix
        L2-normalised TF-IDF matrix of shape (clusters × docs_per_cluster, dims).
    labels : np.ndarray
        True cluster id of every row.
    """
    if clusters < 1 or docs_per_cluster < 1 or dims < clusters or not 0 <= sparsity < 1:
        raise exceptions.InvalidShape(
            f"cannot generate {clusters} clusters of {docs_per_cluster} documents in {dims} dimensions"
        )
    rng = np.random.default_rng(seed)
    m = clusters * docs_per_cluster
    block = dims // clusters
    labels = np.repeat(np.arange(clusters), docs_per_cluster)

    counts = (rng.random((m, dims)) >= sparsity).astype(np.float64)
    for c in range(clusters):
        rows = labels == c
        topic = slice(c * block, (c + 1) * block)
        profile = 1 + rng.poisson(2.0, block)
        used = rng.random((docs_per_cluster, block)) < TOPIC_RATE
        # every document mentions at least one term of its topic
        used[np.arange(docs_per_cluster), rng.integers(0, block, docs_per_cluster)] = True
        counts[rows, topic] += used * profile
    # every term must occur somewhere for its document frequency to be defined
    unused = np.flatnonzero(counts.sum(axis=0) == 0)
    counts[rng.integers(0, m, unused.size), unused] = 1.0

    tf = DocTermMatrix(matrix=sparse.csr_matrix(counts), weighting=Weighting.TF)
    vocab = Vocabulary(
        terms=[f"t{i:05d}" for i in range(dims)],
        doc_frequency=np.diff(tf.matrix.tocsc().indptr).tolist(),
    )
    data, _ = l2_normalize(tfidf_matrix(tf, vocab))
    return data, labels


def synth_dense(m: int, n: int, seed: int = 0) -> DocTermMatrix:
    """
    Generate a dense matrix of uniform random rows scaled to unit length.

    Parameters
    ----------
    m, n : int
        Shape.
    seed : int
        Seed of the generator.

    Returns
    -------
    DocTermMatrix
        Normalised matrix with every entry stored.
    """
    if m < 1 or n < 1:
        raise exceptions.InvalidShape(f"cannot generate a {m}×{n} matrix")
    rng = np.random.default_rng(seed)
    rows = rng.random((m, n)) + 1e-3
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    return DocTermMatrix.from_dense(rows, weighting=Weighting.TF, normalized=True)


def load_preset(name: str, seed: int = 0) -> DocTermMatrix:
    """
    Generate a named benchmark dataset.

    Parameters
    ----------
    name : str
        One of `PRESETS` or `dense` (600×4500 dense rows).
    seed : int
        Seed of the generator.

    Returns
    -------
    DocTermMatrix
        The dataset.
    """
    if name == "dense":
        return synth_dense(600, 4500, seed)
    try:
        params = PRESETS[name]
    except KeyError as e:
        raise exceptions.InvalidShape(f"unknown dataset '{name}'") from e
    data, _ = synth_corpus(**params, seed=seed)
    return data
