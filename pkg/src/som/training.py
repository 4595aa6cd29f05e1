"""
The serial reference trainer: initialisation, best matching units, the weight update
and map quality measures.
"""

import logging

import numpy as np

from .. import exceptions
from ..entities import (
    BmuResult,
    Codebook,
    DocTermMatrix,
    Engine,
    MapGeometry,
    PrincipalComponents,
    TrainedMap,
    TrainingSchedule,
)
from ..utils import Timer
from .geometry import lattice_distances, top2_principal

__all__ = [
    "neighborhood",
    "linear_init",
    "unit_distances",
    "bmu_serial",
    "apply_update",
    "update_step",
    "draw_samples",
    "train_serial",
    "quantization_error",
    "assign",
    "mean_distance",
    "topographic_error",
    "hit_counts",
]

logger = logging.getLogger(__name__)


def neighborhood(
    grid_dist: float | np.ndarray, t: int, s: TrainingSchedule
) -> float | np.ndarray:
    """
    Gaussian neighbourhood activation at iteration t.

    Parameters
    ----------
    grid_dist : float | np.ndarray
        Lattice distance(s) from the winning unit.
    t : int
        Iteration, 0 ≤ t < T.
    s : TrainingSchedule
        Schedule holding the initial rate, radius and decay constant.

    Returns
    -------
    float | np.ndarray
        Activation in [0, alpha0], alpha0 for the winner at t = 0.
    """
    decay = np.exp(-s.k * (t / max(s.T, 1)) ** 2)
    alpha = s.alpha0 * decay
    sigma = max(1.0, s.sigma0 * decay)
    return alpha * np.exp(-np.square(grid_dist) / (2 * sigma**2))


def linear_init(
    data: DocTermMatrix,
    g: MapGeometry,
    components: PrincipalComponents | None = None,
) -> Codebook:
    """
    Place prototypes on a regular grid in the plane of the two largest principal
    components, centred on the data mean.

    Parameters
    ----------
    data : DocTermMatrix
        The training matrix.
    g : MapGeometry
        Lattice shape.
    components : PrincipalComponents | None
        Precomputed eigenpairs, computed from `data` if None.

    Returns
    -------
    Codebook
        Unit (i, j) gets mean + a·√pc1·v1 + b·√pc2·v2 with a spanning [-1, 1] over
        columns and b over rows.
    """
    if components is None:
        components = top2_principal(data)
    a = np.linspace(-1.0, 1.0, g.ncols) if g.ncols > 1 else np.zeros(1)
    b = np.linspace(-1.0, 1.0, g.nrows) if g.nrows > 1 else np.zeros(1)
    rows, cols = np.divmod(np.arange(g.nn), g.ncols)
    weights = (
        components.mean
        + np.outer(a[cols] * np.sqrt(components.pc1), components.v1)
        + np.outer(b[rows] * np.sqrt(components.pc2), components.v2)
    )
    return Codebook(nrows=g.nrows, ncols=g.ncols, weights=weights)


def unit_distances(weights: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Euclidean distances from x to every row of a weight block.

    Squared differences are accumulated sequentially over dimensions for each unit,
    so a unit's distance does not depend on which block it is computed in.

    Parameters
    ----------
    weights : np.ndarray
        A block of prototypes, one per row.
    x : np.ndarray
        Input vector.

    Returns
    -------
    np.ndarray
        One distance per row.
    """
    diff = weights - x
    diff *= diff
    np.cumsum(diff, axis=1, out=diff)
    return np.sqrt(diff[:, -1])


def _check_dim(x: np.ndarray, cb: Codebook) -> None:
    if x.shape != (cb.dim,):
        raise exceptions.DimensionMismatch(
            f"input has length {x.shape[-1]}, codebook dimension is {cb.dim}"
        )


def bmu_serial(x: np.ndarray, cb: Codebook) -> BmuResult:
    """
    Find the unit whose prototype is closest to x.

    Parameters
    ----------
    x : np.ndarray
        Input vector of length `cb.dim`.
    cb : Codebook
        Codebook to search.

    Returns
    -------
    BmuResult
        The winner; ties go to the lowest flat index.
    """
    x = np.asarray(x, dtype=np.float64)
    _check_dim(x, cb)
    distances = unit_distances(cb.weights, x)
    index = int(np.argmin(distances))
    return BmuResult(index=index, coords=cb.coords(index), distance=float(distances[index]))


def apply_update(weights: np.ndarray, x: np.ndarray, h: np.ndarray) -> None:
    """Move a block of prototypes towards x in place, w ← (1 − h)·w + h·x."""
    weights *= (1.0 - h)[:, None]
    weights += h[:, None] * x


def update_step(
    cb: Codebook,
    x: np.ndarray,
    winner: BmuResult,
    t: int,
    s: TrainingSchedule,
    h: float | np.ndarray | None = None,
) -> Codebook:
    """
    Apply one Kohonen update to every unit.

    Parameters
    ----------
    cb : Codebook
        Codebook to mutate.
    x : np.ndarray
        The presented input.
    winner : BmuResult
        Best matching unit for x.
    t : int
        Iteration.
    s : TrainingSchedule
        Training schedule.
    h : float | np.ndarray | None
        Forced activation per unit, bypassing the neighbourhood function.

    Returns
    -------
    cb : Codebook
        The same, mutated codebook.
    """
    if h is None:
        h = neighborhood(lattice_distances(cb.lattice, winner.index), t, s)
    h = np.broadcast_to(np.asarray(h, dtype=np.float64), (cb.nn,))
    apply_update(cb.weights, np.asarray(x, dtype=np.float64), h)
    return cb


def draw_samples(data: DocTermMatrix, s: TrainingSchedule) -> np.ndarray:
    """
    Draw the row presented at each iteration, uniformly with replacement.

    All-zero rows are never drawn. The sequence depends only on the seed, the
    matrix and the schedule, so every engine sees the same inputs.

    Parameters
    ----------
    data : DocTermMatrix
        The training matrix.
    s : TrainingSchedule
        Schedule with the iteration count and seed.

    Returns
    -------
    np.ndarray
        T row indices.
    """
    rows = data.nonzero_rows()
    if rows.size == 0:
        raise exceptions.EmptyData
    rng = np.random.default_rng(s.seed)
    return rows[rng.integers(0, rows.size, size=s.T)]


def train_serial(
    data: DocTermMatrix,
    g: MapGeometry,
    s: TrainingSchedule,
    init: Codebook | None = None,
) -> TrainedMap:
    """
    Train a map one input at a time on a single thread.

    Parameters
    ----------
    data : DocTermMatrix
        Normalised training matrix.
    g : MapGeometry
        Map geometry.
    s : TrainingSchedule
        Training schedule.
    init : Codebook | None
        Initial codebook, the principal-plane initialisation if None.

    Returns
    -------
    TrainedMap
        Codebook, assignments, quantization error and the training loop time.
    """
    if not data.normalized:
        logger.warning("training on a matrix that is not L2-normalised")
    samples = draw_samples(data, s)
    cb = init.copy() if init is not None else linear_init(data, g)
    lattice = cb.lattice
    with Timer() as timer:
        for t, row in enumerate(samples):
            x = data.row(row)
            winner = int(np.argmin(unit_distances(cb.weights, x)))
            h = neighborhood(lattice_distances(lattice, winner), t, s)
            apply_update(cb.weights, x, h)
    assignments = assign(data, cb)
    qe = mean_distance(assignments, data.nonzero_rows())
    logger.info("serial training finished in %.2fs, QE %.6f", timer.seconds, qe)
    return TrainedMap(
        codebook=Codebook(nrows=cb.nrows, ncols=cb.ncols, weights=cb.weights),
        geometry=g,
        schedule=s,
        assignments=assignments,
        quantization_error=qe,
        engine=Engine.SERIAL,
        workers=1,
        wall_seconds=timer.seconds,
    )


def assign(data: DocTermMatrix, cb: Codebook) -> list[BmuResult]:
    """
    Find the best matching unit of every row, in row order.

    Parameters
    ----------
    data : DocTermMatrix
        Matrix whose column count equals the codebook dimension.
    cb : Codebook
        Trained codebook.

    Returns
    -------
    list[BmuResult]
        One result per row, including all-zero rows.
    """
    if data.n != cb.dim:
        raise exceptions.DimensionMismatch(
            f"matrix has {data.n} columns, codebook dimension is {cb.dim}"
        )
    return [bmu_serial(data.row(i), cb) for i in range(data.m)]


def mean_distance(assignments: list[BmuResult], rows: np.ndarray) -> float:
    """Mean BMU distance over the given rows, 0 when there are none."""
    if len(rows) == 0:
        return 0.0
    return float(np.mean([assignments[i].distance for i in rows]))


def quantization_error(data: DocTermMatrix, cb: Codebook) -> float:
    """
    Mean Euclidean distance from each nonzero row to its best matching unit.

    Parameters
    ----------
    data : DocTermMatrix
        Matrix whose column count equals the codebook dimension.
    cb : Codebook
        Codebook to evaluate.

    Returns
    -------
    float
        The quantization error.
    """
    return mean_distance(assign(data, cb), data.nonzero_rows())


def topographic_error(data: DocTermMatrix, cb: Codebook) -> float:
    """
    Fraction of nonzero rows whose two closest units are not lattice neighbours.

    Parameters
    ----------
    data : DocTermMatrix
        Matrix whose column count equals the codebook dimension.
    cb : Codebook
        Codebook with at least two units.

    Returns
    -------
    float
        A value in [0, 1].
    """
    if data.n != cb.dim:
        raise exceptions.DimensionMismatch
    rows = data.nonzero_rows()
    if cb.nn < 2 or rows.size == 0:
        return 0.0
    lattice = cb.lattice
    errors = 0
    for i in rows:
        first, second = np.argsort(unit_distances(cb.weights, data.row(i)), kind="stable")[:2]
        if lattice_distances(lattice, first)[second] > 1.0 + 1e-9:
            errors += 1
    return errors / rows.size


def hit_counts(assignments: list[BmuResult], units: int) -> np.ndarray:
    """Number of inputs mapped to each unit."""
    indices = np.fromiter((a.index for a in assignments), dtype=np.int64, count=len(assignments))
    return np.bincount(indices, minlength=units)
