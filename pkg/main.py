"""
This application maps customer complaints onto a hexagonal self-organizing map. It stages
the workflow through files: ingest, dtm, train, assign, viz and bench.
"""

import argparse
import logging
import sys

from dotenv import load_dotenv

from src import __version__, commands, exceptions
from src.utils import configure_logging

logger = logging.getLogger("main")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subparser per command.

    Returns
    -------
    argparse.ArgumentParser
        The application parser.
    """
    parser = argparse.ArgumentParser(
        prog="complaint-map",
        description="Train and visualise self-organizing maps of customer complaints.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=None,
        help="Logging level, SOM_LOG_LEVEL or INFO by default.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in commands.ALL:
        command.add_parser(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Run a command and translate failures into exit codes.

    Returns
    -------
    int
        0 on success, 1 on a domain or I/O error and 2 on a usage error.
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except exceptions.UsageError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return 2
    except exceptions.ComplaintMapError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
