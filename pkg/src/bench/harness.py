"""
Measurement harness for engine parity and map-size scaling studies.
"""

import logging

from .. import exceptions
from ..entities import (
    BenchReport,
    BenchRow,
    Codebook,
    DocTermMatrix,
    Engine,
    MapGeometry,
    TrainedMap,
    TrainingSchedule,
)
from ..parallel import train_parallel
from ..som import linear_init, train_serial
from .synth import synth_dense

__all__ = ["run_engine", "compare_engines", "scaling_study", "qe_gap", "FAST_TOLERANCE"]

logger = logging.getLogger(__name__)

# relative QE tolerance of the fast engine
FAST_TOLERANCE = 1e-3


def run_engine(
    engine: Engine,
    data: DocTermMatrix,
    g: MapGeometry,
    s: TrainingSchedule,
    workers: int = 1,
    init: Codebook | None = None,
) -> TrainedMap:
    """
    Train with the given engine.

    Parameters
    ----------
    engine : Engine
        Engine to use.
    data : DocTermMatrix
        Normalised training matrix.
    g : MapGeometry
        Map geometry.
    s : TrainingSchedule
        Training schedule.
    workers : int
        Worker count of the parallel engines.
    init : Codebook | None
        Initial codebook shared across engines.

    Returns
    -------
    TrainedMap
        The trained map.
    """
    if engine == Engine.SERIAL:
        return train_serial(data, g, s, init=init)
    return train_parallel(data, g, s, workers=workers, mode=engine.mode, init=init)


def _row(trained: TrainedMap, dataset: str, data: DocTermMatrix) -> BenchRow:
    return BenchRow(
        engine=trained.engine,
        dataset=dataset,
        m=data.m,
        n=data.n,
        nrows=trained.geometry.nrows,
        ncols=trained.geometry.ncols,
        num_itr=trained.schedule.T,
        qe=trained.quantization_error,
        wall_seconds=trained.wall_seconds,
    )


def qe_gap(qe: float, reference: float) -> float:
    """Absolute QE difference relative to the reference QE, or absolute if the reference is 0."""
    gap = abs(qe - reference)
    return gap / reference if reference > 0 else gap


def compare_engines(
    data: DocTermMatrix,
    g: MapGeometry,
    s: TrainingSchedule,
    workers: int,
    dataset: str = "custom",
) -> list[BenchRow]:
    """
    Train the serial, strict parallel and fast parallel engines on the same seed.

    Engines run one after another so their timings do not contend.

    Parameters
    ----------
    data : DocTermMatrix
        Normalised training matrix.
    g : MapGeometry
        Map geometry.
    s : TrainingSchedule
        Training schedule shared by all engines.
    workers : int
        Worker count of the parallel engines.
    dataset : str
        Dataset name to report.

    Returns
    -------
    list[BenchRow]
        One row per engine with speedups and QE gaps relative to the serial engine.
    """
    init = linear_init(data, g)
    results = {
        engine: run_engine(engine, data, g, s, workers=workers, init=init) for engine in Engine
    }
    serial = results[Engine.SERIAL]
    strict = results[Engine.PARALLEL_STRICT]
    fast = results[Engine.PARALLEL_FAST]
    if strict.quantization_error != serial.quantization_error or not (
        strict.codebook.weights == serial.codebook.weights
    ).all():
        raise exceptions.ParityViolation(
            f"QE {strict.quantization_error!r} differs from serial {serial.quantization_error!r}"
        )
    gap = qe_gap(fast.quantization_error, serial.quantization_error)
    if gap > FAST_TOLERANCE:
        logger.warning("fast engine QE differs from serial by %.3g relative", gap)

    rows = []
    for trained in results.values():
        row = _row(trained, dataset, data)
        row.qe_gap = qe_gap(trained.quantization_error, serial.quantization_error)
        if trained.wall_seconds > 0:
            row.speedup = serial.wall_seconds / trained.wall_seconds
        rows.append(row)
    return rows


def scaling_study(
    map_sides: list[int],
    dim: int = 64,
    data: DocTermMatrix | None = None,
    iterations: int | None = None,
    workers: int = 1,
    seed: int = 0,
    engines: tuple[Engine, ...] = (Engine.SERIAL, Engine.PARALLEL_FAST),
) -> BenchReport:
    """
    Time training on square maps of growing size with fixed data and iterations.

    Parameters
    ----------
    map_sides : list[int]
        Strictly ascending map sides.
    dim : int
        Vector length of the generated data, ignored when `data` is given.
    data : DocTermMatrix | None
        Training matrix, 256 dense random rows of length `dim` if None.
    iterations : int | None
        Iterations per run, 10 × m if None.
    workers : int
        Worker count of the parallel engines.
    seed : int
        Seed for the data and the sample stream.
    engines : tuple[Engine, ...]
        Engines to time.

    Returns
    -------
    BenchReport
        One row per engine and size; the ratio of increase relates each size to the
        previous one of the same engine.
    """
    if not map_sides or any(a >= b for a, b in zip(map_sides, map_sides[1:])):
        raise ValueError("map sides must be strictly ascending")
    if data is None:
        data = synth_dense(256, dim, seed)
    iterations = iterations or 10 * data.m
    report = BenchReport()
    previous: dict[Engine, float] = {}
    for side in map_sides:
        g = MapGeometry.from_sides(side, side, iterations, m=data.m)
        s = TrainingSchedule.for_geometry(g, seed=seed)
        init = linear_init(data, g)
        for engine in engines:
            trained = run_engine(engine, data, g, s, workers=workers, init=init)
            row = _row(trained, f"scaling-{side}", data)
            if engine in previous and previous[engine] > 0:
                row.ratio_of_increase = trained.wall_seconds / previous[engine]
            previous[engine] = trained.wall_seconds
            report.rows.append(row)
            logger.info("%s on %d×%d: %.2fs", engine, side, side, trained.wall_seconds)
    return report
