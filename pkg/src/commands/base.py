"""
Shared argument definitions and settings resolution for the subcommands.
"""

import logging
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import TypeVar

from dotenv import dotenv_values
from pydantic import BaseModel, ValidationError

from .. import exceptions

__all__ = ["add_config_argument", "add_engine_arguments", "resolve"]

logger = logging.getLogger(__name__)

Settings = TypeVar("Settings", bound=BaseModel)


def add_config_argument(parser: ArgumentParser) -> None:
    """Add the `--config` flag pointing to a flat key=value settings file."""
    parser.add_argument(
        "--config",
        default=None,
        help="Settings file with one key=value per line, overridden by flags.",
    )


def add_engine_arguments(parser: ArgumentParser) -> None:
    """Add the flags selecting the training engine and its worker count."""
    parser.add_argument(
        "--engine",
        default=None,
        choices=["serial", "parallel-strict", "parallel-fast"],
        help="Training engine, serial by default.",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker count of the parallel engines, SOM_WORKERS or the CPU count by default.",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed of the sample stream.")


def _read_config(path: str) -> dict[str, str]:
    if not Path(path).is_file():
        raise FileNotFoundError(f"settings file {path} does not exist")
    values = dotenv_values(path)
    return {
        key.lower().replace("-", "_"): value for key, value in values.items() if value is not None
    }


def resolve(args: Namespace, model: type[Settings]) -> Settings:
    """
    Merge flags, the optional settings file and defaults into a settings model.

    Flags take precedence over the settings file, which takes precedence over the
    environment-backed defaults of the model.

    Parameters
    ----------
    args : Namespace
        Parsed arguments. Flags left at None are treated as absent.
    model : type[Settings]
        Settings model to validate into.

    Returns
    -------
    Settings
        Validated settings.

    Raises
    ------
    UsageError
        If the merged settings are inconsistent or invalid.
    """
    values = {}
    if (path := getattr(args, "config", None)) is not None:
        values.update(_read_config(path))
    values.update({key: value for key, value in vars(args).items() if value is not None})
    unknown = sorted(set(values) - set(model.model_fields) - {"config", "command", "handler"})
    if unknown:
        logger.warning("ignoring unknown settings: %s", ", ".join(unknown))
    values = {key: value for key, value in values.items() if key in model.model_fields}
    try:
        return model.model_validate(values)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(x) for x in error["loc"])
        message = error["msg"].removeprefix("Value error, ")
        raise exceptions.UsageError(f"{field}: {message}" if field else message) from e
