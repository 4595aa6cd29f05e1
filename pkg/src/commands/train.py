"""
The `train` command: size and train a map on a document-term matrix.
"""

import logging
from argparse import Namespace

from .. import exceptions, storage
from ..bench import run_engine
from ..entities import (
    DocTermMatrix,
    Engine,
    MapGeometry,
    PrincipalComponents,
    RunConfig,
    TrainingSchedule,
)
from ..som import linear_init, map_geometry, top2_principal, topographic_error
from .base import add_config_argument, add_engine_arguments, resolve

__all__ = ["add_parser", "run", "choose_geometry"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("train", help="Train a map on a DTM file.")
    parser.add_argument("--input", default=None, help="DTM file written by dtm.")
    parser.add_argument("--output", default=None, help="Map file to write.")
    parser.add_argument("--rows", type=int, default=None, help="Map rows, requires --cols and --iters.")
    parser.add_argument("--cols", type=int, default=None, help="Map columns.")
    parser.add_argument("--iters", type=int, default=None, help="Training iterations.")
    parser.add_argument("--alpha0", type=float, default=None, help="Initial learning rate.")
    add_engine_arguments(parser)
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def choose_geometry(
    config: RunConfig,
    m: int,
    data: DocTermMatrix,
    components: PrincipalComponents | None = None,
) -> MapGeometry:
    """Use the explicit overrides if given, otherwise size the map from the data."""
    if config.has_overrides:
        return MapGeometry.from_sides(config.rows, config.cols, config.iters, m=m)
    return map_geometry(m, data, components)


def run(args: Namespace) -> int:
    """Train and write the map with its metadata sidecar."""
    config = resolve(args, RunConfig)
    if config.input is None or config.output is None:
        raise exceptions.UsageError("train requires --input and --output")
    dtm = storage.read_dtm(config.input)
    if dtm.nonzero_rows().size == 0:
        raise exceptions.EmptyData(f"{config.input} has no nonzero rows")
    # one eigendecomposition serves both sizing and initialisation
    components = top2_principal(dtm)
    g = choose_geometry(config, dtm.m, dtm, components)
    s = TrainingSchedule.for_geometry(g, alpha0=config.alpha0, seed=config.seed)
    init = linear_init(dtm, g, components)
    workers = 1 if config.engine == Engine.SERIAL else config.workers
    trained = run_engine(config.engine, dtm, g, s, workers=workers, init=init)
    te = topographic_error(dtm, trained.codebook)
    storage.write_map(trained, config.output)
    storage.write_metadata(trained, storage.metadata_path(config.output), topographic_error=te)
    logger.info("wrote %d×%d map to %s", g.nrows, g.ncols, config.output)
    print(f"map: {g.nrows}×{g.ncols}, iterations: {g.num_itr}, engine: {trained.engine}")
    print(f"QE: {trained.quantization_error:.6f}")
    print(f"TE: {te:.6f}")
    print(f"wall seconds: {trained.wall_seconds:.3f}")
    return 0
