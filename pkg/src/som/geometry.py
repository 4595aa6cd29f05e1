"""
Hexagonal lattice geometry, principal components and the map sizing heuristic.
"""

import logging
import math

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

from .. import exceptions
from ..entities import DocTermMatrix, MapGeometry, PrincipalComponents

__all__ = [
    "hex_position",
    "grid_distance",
    "lattice_distances",
    "top2_principal",
    "map_size",
    "map_geometry",
]

logger = logging.getLogger(__name__)

SQRT3_2 = math.sqrt(3.0) / 2.0
# above this many columns the covariance is never materialised
DENSE_EIGEN_LIMIT = 512


def hex_position(i: int, j: int) -> tuple[float, float]:
    """
    Planar position of a unit on a pointy-top hexagonal lattice with odd rows
    shifted right by half a cell.

    Parameters
    ----------
    i : int
        Row index.
    j : int
        Column index.

    Returns
    -------
    tuple[float, float]
        The (x, y) coordinates; adjacent units are at distance 1.
    """
    return j + 0.5 * (i % 2), i * SQRT3_2


def grid_distance(u: tuple[int, int], v: tuple[int, int]) -> float:
    """Euclidean distance between the planar positions of two units."""
    (x1, y1), (x2, y2) = hex_position(*u), hex_position(*v)
    return math.hypot(x1 - x2, y1 - y2)


def lattice_distances(lattice: np.ndarray, index: int) -> np.ndarray:
    """
    Distances from one unit to every unit of a lattice.

    Parameters
    ----------
    lattice : np.ndarray
        Planar positions as an nn×2 array, see `Codebook.lattice`.
    index : int
        Flat index of the reference unit.

    Returns
    -------
    np.ndarray
        Vector of nn grid distances.
    """
    delta = lattice - lattice[index]
    return np.sqrt(delta[:, 0] ** 2 + delta[:, 1] ** 2)


def _orient(vector: np.ndarray) -> np.ndarray:
    """Flip the sign so that the largest-magnitude component is positive."""
    if vector.size and vector[np.argmax(np.abs(vector))] < 0:
        return -vector
    return vector


def _rows_identical(X: sparse.csr_matrix) -> bool:
    """Whether every row of a sparse matrix equals the first one."""
    ones = sparse.csr_matrix(np.ones((X.shape[0], 1)))
    return (X - ones @ X[0]).count_nonzero() == 0


def top2_principal(data: DocTermMatrix) -> PrincipalComponents:
    """
    Compute the two largest eigenpairs of the sample covariance of the rows.

    Narrow matrices use a dense eigendecomposition. Wide sparse matrices use
    Lanczos iteration on the implicitly centred covariance operator, so the n×n
    covariance is never formed.

    Parameters
    ----------
    data : DocTermMatrix
        Matrix with at least two rows.

    Returns
    -------
    PrincipalComponents
        Eigenvalues pc1 ≥ pc2 ≥ 0, orthonormal eigenvectors and the row mean.
    """
    m, n = data.m, data.n
    if m < 2:
        raise exceptions.DegenerateData
    X = data.matrix
    mean = np.asarray(X.mean(axis=0)).ravel()
    if _rows_identical(X):
        v1 = np.zeros(n)
        v1[0] = 1.0
        v2 = np.zeros(n)
        if n > 1:
            v2[1] = 1.0
        return PrincipalComponents(pc1=0.0, pc2=0.0, v1=v1, v2=v2, mean=mean)

    if n <= DENSE_EIGEN_LIMIT:
        centered = X.toarray() - mean
        covariance = centered.T @ centered / (m - 1)
        values, vectors = np.linalg.eigh(covariance)
        values, vectors = values[::-1], vectors[:, ::-1]
    else:

        def matvec(v: np.ndarray) -> np.ndarray:
            v = np.ravel(v)
            return (X.T @ (X @ v) - m * mean * (mean @ v)) / (m - 1)

        operator = splinalg.LinearOperator((n, n), matvec=matvec, dtype=np.float64)
        v0 = np.random.default_rng(0).random(n)
        values, vectors = splinalg.eigsh(operator, k=2, which="LA", v0=v0)
        order = np.argsort(values)[::-1]
        values, vectors = values[order], vectors[:, order]

    pc1 = max(float(values[0]), 0.0)
    v1 = _orient(vectors[:, 0])
    if n > 1:
        pc2 = min(max(float(values[1]), 0.0), pc1)
        v2 = _orient(vectors[:, 1])
    else:
        pc2, v2 = 0.0, np.zeros(n)
    return PrincipalComponents(pc1=pc1, pc2=pc2, v1=v1, v2=v2, mean=mean)


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def map_size(m: int, pc1: float, pc2: float) -> MapGeometry:
    """
    Derive map sides and iteration count from the input count and the two largest
    covariance eigenvalues.

    Parameters
    ----------
    m : int
        Number of inputs, at least 2.
    pc1, pc2 : float
        Largest and second largest eigenvalues.

    Returns
    -------
    MapGeometry
        Map geometry together with every intermediate value.
    """
    if m < 2:
        raise exceptions.DegenerateData
    munits = _round_half_up(5 * math.sqrt(m))
    if pc1 == 0 or pc2 * munits < pc1:
        r = 1.0
    else:
        r = math.sqrt(pc1 / pc2)
    size1 = max(1, _round_half_up(min(munits, math.sqrt(munits / (r * math.sqrt(0.75))))))
    size2 = max(1, munits // size1)
    nrows, ncols = min(size1, size2), max(size1, size2)
    nn = nrows * ncols
    num_itr = math.ceil(50 * nn / m) * m * 4
    geometry = MapGeometry(
        m=m,
        munits=munits,
        pc1=pc1,
        pc2=pc2,
        r=r,
        size1=size1,
        size2=size2,
        nrows=nrows,
        ncols=ncols,
        num_itr=num_itr,
    )
    return geometry


def map_geometry(
    m: int,
    data: DocTermMatrix,
    components: PrincipalComponents | None = None,
) -> MapGeometry:
    """
    Size a map for a matrix using the two largest principal components.

    Parameters
    ----------
    m : int
        Number of inputs.
    data : DocTermMatrix
        The training matrix.
    components : PrincipalComponents | None
        Precomputed eigenpairs of `data`, computed if None.

    Returns
    -------
    MapGeometry
        Map geometry and iteration count.
    """
    if components is None:
        components = top2_principal(data)
    geometry = map_size(m, components.pc1, components.pc2)
    logger.info(
        "map of %d×%d units with %d iterations for %d inputs",
        geometry.nrows,
        geometry.ncols,
        geometry.num_itr,
        m,
    )
    return geometry
