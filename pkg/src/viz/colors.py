"""
Similarity colouring of codebooks: similar prototypes receive similar colours.
"""

import numpy as np
from sklearn.decomposition import PCA

from ..entities import Codebook

__all__ = ["similarity_colors"]

NEUTRAL = 128
# a component whose projections span less than this (relative) is treated as flat
FLAT_TOLERANCE = 1e-9


def similarity_colors(cb: Codebook) -> np.ndarray:
    """
    Colour units by projecting prototypes on the codebook's three largest principal
    components and scaling each component to [0, 255].

    Parameters
    ----------
    cb : Codebook
        Trained codebook.

    Returns
    -------
    colors : np.ndarray
        An nn×3 array of uint8 RGB values. A channel whose component has no
        variance is fixed at 128.
    """
    colors = np.full((cb.nn, 3), NEUTRAL, dtype=np.uint8)
    n_components = min(3, cb.nn, cb.dim)
    if cb.nn < 2 or np.ptp(cb.weights, axis=0).max() == 0:
        return colors
    scores = PCA(n_components=n_components, svd_solver="full").fit_transform(cb.weights)
    spans = scores.max(axis=0) - scores.min(axis=0)
    tolerance = FLAT_TOLERANCE * max(1.0, float(spans.max()))
    for channel in range(n_components):
        span = spans[channel]
        if span <= tolerance:
            continue
        scaled = (scores[:, channel] - scores[:, channel].min()) / span * 255.0
        colors[:, channel] = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    return colors
