"""
Subcommands of the command-line application, one module per pipeline stage.
"""

from . import assign, bench, dtm, ingest, train, viz

ALL = [
    ingest,
    dtm,
    train,
    assign,
    viz,
    bench,
]
