"""
A data-parallel trainer that splits map units across a worker pool. Every iteration
runs three phases: each worker scans its own units for a local winner, the local
winners are reduced to the global one by a tournament, and each worker updates its
own units. The phases are separated by a barrier.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import accumulate

import numpy as np

from .. import exceptions
from ..entities import (
    BmuResult,
    Candidate,
    Codebook,
    DocTermMatrix,
    Engine,
    MapGeometry,
    Mode,
    TrainedMap,
    TrainingSchedule,
    UnitPartition,
)
from ..som import (
    apply_update,
    assign,
    draw_samples,
    lattice_distances,
    linear_init,
    mean_distance,
    neighborhood,
    unit_distances,
)
from ..utils import Timer

__all__ = [
    "partition_units",
    "partial_bmu",
    "reduce_min",
    "parallel_update",
    "ParallelEngine",
    "train_parallel",
]

logger = logging.getLogger(__name__)

SENTINEL = Candidate()


def partition_units(nn: int, workers: int) -> list[UnitPartition]:
    """
    Split units into contiguous ranges whose sizes differ by at most one.

    Parameters
    ----------
    nn : int
        Number of units.
    workers : int
        Number of workers, at least 1.

    Returns
    -------
    list[UnitPartition]
        One range per worker; earlier workers take the remainder, and ranges are
        empty only when there are more workers than units.
    """
    if workers < 1:
        raise exceptions.InvalidWorkerCount
    base, remainder = divmod(nn, workers)
    sizes = [base + (1 if i < remainder else 0) for i in range(workers)]
    ends = list(accumulate(sizes))
    return [
        UnitPartition(worker_id=i, start=end - size, end=end)
        for i, (size, end) in enumerate(zip(sizes, ends))
    ]


def _fast_distances(weights: np.ndarray, x: np.ndarray) -> np.ndarray:
    # pairwise summation, reassociates the per-unit accumulation
    diff = weights - x
    return np.sqrt((diff * diff).sum(axis=1))


def partial_bmu(
    x: np.ndarray,
    cb: Codebook,
    p: UnitPartition,
    mode: Mode = Mode.STRICT,
) -> Candidate:
    """
    Find the closest unit within one partition.

    Parameters
    ----------
    x : np.ndarray
        Input vector, read only.
    cb : Codebook
        The shared codebook.
    p : UnitPartition
        Units to scan.
    mode : Mode
        STRICT accumulates squared differences sequentially like the serial trainer,
        FAST lets the sum be reassociated.

    Returns
    -------
    Candidate
        Local winner with ties going to the lowest index, or padding for an empty
        partition.
    """
    if p.is_empty:
        return SENTINEL
    block = cb.weights[p.start : p.end]
    if mode == Mode.STRICT:
        distances = unit_distances(block, x)
    else:
        distances = _fast_distances(block, x)
    local = int(np.argmin(distances))
    return Candidate(distance=float(distances[local]), unit_index=p.start + local)


def _better(a: Candidate, b: Candidate) -> Candidate:
    return a if a.key <= b.key else b


def reduce_min(candidates: list[Candidate]) -> Candidate:
    """
    Select the global winner by a pairwise tournament.

    The list is padded with sentinels to the next power of two. A lower distance
    wins, equal distances go to the lower unit index, so the result does not depend
    on the order of the candidates.

    Parameters
    ----------
    candidates : list[Candidate]
        Local winners, at least one.

    Returns
    -------
    Candidate
        The global winner.
    """
    if not candidates:
        raise ValueError("at least one candidate is required")
    size = 1 << (len(candidates) - 1).bit_length()
    bracket = list(candidates) + [SENTINEL] * (size - len(candidates))
    while len(bracket) > 1:
        bracket = [_better(bracket[i], bracket[i + 1]) for i in range(0, len(bracket), 2)]
    winner = bracket[0]
    if winner.is_sentinel:
        raise exceptions.AllSentinels
    return winner


def _update_block(
    weights: np.ndarray, x: np.ndarray, h: np.ndarray, p: UnitPartition
) -> tuple[int, int]:
    if not p.is_empty:
        apply_update(weights[p.start : p.end], x, h[p.start : p.end])
    return p.start, p.end


def parallel_update(
    cb: Codebook,
    x: np.ndarray,
    winner: BmuResult,
    t: int,
    s: TrainingSchedule,
    partitions: list[UnitPartition],
    executor: ThreadPoolExecutor | None = None,
) -> Codebook:
    """
    Apply the Kohonen update with each worker writing only its own units.

    Activations are computed once for the whole lattice and sliced per worker, so
    each unit receives exactly the arithmetic of the serial update.

    Parameters
    ----------
    cb : Codebook
        Codebook to mutate.
    x : np.ndarray
        The presented input.
    winner : BmuResult
        Global winner of the iteration.
    t : int
        Iteration.
    s : TrainingSchedule
        Training schedule.
    partitions : list[UnitPartition]
        Disjoint unit ranges.
    executor : ThreadPoolExecutor | None
        Pool to run the workers on, the calling thread if None.

    Returns
    -------
    cb : Codebook
        The same, mutated codebook.
    """
    h = neighborhood(lattice_distances(cb.lattice, winner.index), t, s)
    if executor is None:
        for p in partitions:
            _update_block(cb.weights, x, h, p)
    else:
        list(executor.map(lambda p: _update_block(cb.weights, x, h, p), partitions))
    return cb


class ParallelEngine:
    """
    Holds a codebook resident for a whole training run and drives the worker pool.

    The engine owns its codebook exclusively and must not be shared between
    concurrent training runs. With `debug` enabled it records the unit ranges
    written in every update phase and checks that the ranges are disjoint and that
    no weight is written before the winner of the iteration is known.
    """

    def __init__(
        self,
        codebook: Codebook,
        workers: int,
        mode: Mode = Mode.STRICT,
        debug: bool = False,
    ):
        if workers < 1:
            raise exceptions.InvalidWorkerCount(f"got {workers} workers")
        if workers > codebook.nn:
            logger.warning("clamping %d workers to %d map units", workers, codebook.nn)
            workers = codebook.nn
        self.codebook = codebook.copy()
        self.workers = workers
        self.mode = mode
        self.debug = debug
        self.partitions = partition_units(codebook.nn, workers)
        self.lattice = self.codebook.lattice
        self.iteration = 0
        self.winner_iteration = -1
        self.write_log: list[list[tuple[int, int]]] = []
        self._executor: ThreadPoolExecutor | None = None

    def __enter__(self) -> "ParallelEngine":
        if self.workers > 1:
            self._executor = ThreadPoolExecutor(
                max_workers=self.workers, thread_name_prefix="som-worker"
            )
        return self

    def __exit__(self, *exc) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def _map(self, function, partitions):
        if self._executor is None:
            return [function(p) for p in partitions]
        # collecting all results is the barrier between phases
        return list(self._executor.map(function, partitions))

    def find_bmu(self, x: np.ndarray) -> BmuResult:
        """
        Run the scan and reduction phases for one input.

        Parameters
        ----------
        x : np.ndarray
            Input vector.

        Returns
        -------
        BmuResult
            The global winner.
        """
        if x.shape != (self.codebook.dim,):
            raise exceptions.DimensionMismatch
        candidates = self._map(
            lambda p: partial_bmu(x, self.codebook, p, self.mode), self.partitions
        )
        best = reduce_min(candidates)
        self.winner_iteration = self.iteration
        return BmuResult(
            index=best.unit_index,
            coords=self.codebook.coords(best.unit_index),
            distance=best.distance,
        )

    def update(self, x: np.ndarray, winner: BmuResult, t: int, s: TrainingSchedule) -> None:
        """
        Run the update phase for one input.

        Parameters
        ----------
        x : np.ndarray
            The presented input.
        winner : BmuResult
            Global winner returned by `find_bmu` for this iteration.
        t : int
            Iteration.
        s : TrainingSchedule
            Training schedule.
        """
        if self.debug:
            assert self.winner_iteration == self.iteration, "update before winner"
        h = neighborhood(lattice_distances(self.lattice, winner.index), t, s)
        weights = self.codebook.weights
        written = self._map(lambda p: _update_block(weights, x, h, p), self.partitions)
        if self.debug:
            self._check_writes(written)
        self.iteration += 1

    def _check_writes(self, written: list[tuple[int, int]]) -> None:
        ranges = sorted((start, end) for start, end in written if end > start)
        for (_, end), (start, _) in zip(ranges, ranges[1:]):
            assert end <= start, "a unit was written by two workers"
        covered = sum(end - start for start, end in ranges)
        assert covered == self.codebook.nn, "some units were not updated"
        self.write_log.append(ranges)

    def export(self) -> Codebook:
        """Copy the resident codebook out of the engine."""
        return self.codebook.copy()


def train_parallel(
    data: DocTermMatrix,
    g: MapGeometry,
    s: TrainingSchedule,
    workers: int,
    mode: Mode = Mode.STRICT,
    init: Codebook | None = None,
    debug: bool = False,
) -> TrainedMap:
    """
    Train a map with units partitioned across a worker pool.

    Inputs are drawn on the coordinator from the same seeded stream as the serial
    trainer. In strict mode the result is identical to `train_serial`; in fast mode
    distance sums may be reassociated.

    Parameters
    ----------
    data : DocTermMatrix
        Normalised training matrix.
    g : MapGeometry
        Map geometry.
    s : TrainingSchedule
        Training schedule.
    workers : int
        Number of workers, clamped to the number of units.
    mode : Mode
        Arithmetic contract.
    init : Codebook | None
        Initial codebook, the principal-plane initialisation if None.
    debug : bool
        Check write disjointness and phase ordering on every iteration.

    Returns
    -------
    TrainedMap
        Codebook, assignments, quantization error and the training loop time.
    """
    if workers < 1:
        raise exceptions.InvalidWorkerCount(f"got {workers} workers")
    samples = draw_samples(data, s)
    cb = init if init is not None else linear_init(data, g)
    with ParallelEngine(cb, workers, mode=mode, debug=debug) as engine:
        with Timer() as timer:
            for t, row in enumerate(samples):
                x = data.row(row)
                winner = engine.find_bmu(x)
                engine.update(x, winner, t, s)
        trained = engine.export()
    assignments = assign(data, trained)
    qe = mean_distance(assignments, data.nonzero_rows())
    engine_tag = Engine.PARALLEL_STRICT if mode == Mode.STRICT else Engine.PARALLEL_FAST
    logger.info(
        "%s training with %d workers finished in %.2fs, QE %.6f",
        engine_tag,
        engine.workers,
        timer.seconds,
        qe,
    )
    return TrainedMap(
        codebook=trained,
        geometry=g,
        schedule=s,
        assignments=assignments,
        quantization_error=qe,
        engine=engine_tag,
        workers=engine.workers,
        wall_seconds=timer.seconds,
    )
