"""
The `bench` command: engine parity or map-size scaling studies written to CSV.
"""

import logging
from argparse import Namespace

from .. import exceptions
from ..bench import compare_engines, load_preset, scaling_study
from ..entities import BenchConfig, BenchReport, Engine, Study, TrainingSchedule
from ..som import map_geometry
from .base import add_config_argument, resolve

__all__ = ["add_parser", "run", "summarize"]

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    """Register the command."""
    parser = subparsers.add_parser("bench", help="Run a benchmark study.")
    parser.add_argument("--study", choices=["parity", "scaling"], default=None)
    parser.add_argument("--output", default=None, help="CSV file to write.")
    parser.add_argument(
        "--dataset",
        default=None,
        help="Parity dataset: small, wide, clusters or dense.",
    )
    parser.add_argument("--sides", default=None, help="Comma-separated ascending map sides.")
    parser.add_argument("--dim", type=int, default=None, help="Vector length of the scaling data.")
    parser.add_argument("--iters", type=int, default=None, help="Iterations per run.")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    add_config_argument(parser)
    parser.set_defaults(handler=run)


def summarize(report: BenchReport) -> list[str]:
    """
    Summarise a report with one line per engine.

    Parameters
    ----------
    report : BenchReport
        Report to summarise.

    Returns
    -------
    list[str]
        Total time of every engine with its largest QE gap or its time ratios.
    """
    lines = []
    for engine in Engine:
        rows = report.for_engine(engine)
        if not rows:
            continue
        line = f"{engine}: {sum(row.wall_seconds for row in rows):.3f}s"
        if gaps := [row.qe_gap for row in rows if row.qe_gap is not None]:
            line += f", largest QE gap {max(gaps):.3g}"
        if ratios := [row.ratio_of_increase for row in rows if row.ratio_of_increase is not None]:
            line += ", time ratios " + ", ".join(f"{ratio:.2f}" for ratio in ratios)
        lines.append(line)
    return lines


def run(args: Namespace) -> int:
    """Run the study and write the report."""
    config = resolve(args, BenchConfig)
    if config.output is None:
        raise exceptions.UsageError("bench requires --output")
    match config.study:
        case Study.PARITY:
            data = load_preset(config.dataset, seed=config.seed)
            g = map_geometry(data.m, data)
            if config.iters is not None:
                g = g.model_copy(update={"num_itr": config.iters})
            s = TrainingSchedule.for_geometry(g, seed=config.seed)
            report = BenchReport(
                rows=compare_engines(data, g, s, config.workers, dataset=config.dataset)
            )
        case Study.SCALING:
            report = scaling_study(
                config.sides,
                dim=config.dim,
                iterations=config.iters,
                workers=config.workers,
                seed=config.seed,
            )
    report.to_csv(config.output)
    logger.info("wrote %d rows to %s", len(report.rows), config.output)
    print(report.to_frame().to_string(index=False))
    for line in summarize(report):
        print(line)
    return 0
