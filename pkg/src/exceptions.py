"""
Exceptions raised by the corpus, training, visualisation and benchmark routines.
"""

__all__ = [
    "ComplaintMapError",
    "MalformedInput",
    "FormatError",
    "EmptyCorpus",
    "UnknownTerm",
    "InvalidFrequency",
    "DegenerateData",
    "DimensionMismatch",
    "EmptyData",
    "InvalidWorkerCount",
    "AllSentinels",
    "InvalidShape",
    "ParityViolation",
    "UsageError",
]


class ComplaintMapError(Exception):
    """Base class for all errors raised by the toolkit."""

    detail = "The operation could not be completed."

    def __init__(self, detail: str | None = None):
        self.detail = detail or self.detail
        super().__init__(self.detail)


class MalformedInput(ComplaintMapError):
    """An input record could not be parsed."""

    detail = "The input could not be parsed."

    def __init__(self, detail: str | None = None, line: int | None = None):
        self.line = line
        if line is not None:
            detail = f"line {line}: {detail or self.detail}"
        super().__init__(detail)


class FormatError(ComplaintMapError):
    detail = "The file is not a valid container."


class EmptyCorpus(ComplaintMapError):
    detail = "The corpus contains no tokens."


class UnknownTerm(ComplaintMapError):
    detail = "A token is absent from the vocabulary."


class InvalidFrequency(ComplaintMapError):
    detail = "Document frequency must be between 1 and the document count."


class DegenerateData(ComplaintMapError):
    detail = "At least two documents are required to compute principal components."


class DimensionMismatch(ComplaintMapError):
    detail = "Vector length does not match the codebook dimension."


class EmptyData(ComplaintMapError):
    detail = "The matrix has no nonzero rows to train on."


class InvalidWorkerCount(ComplaintMapError):
    detail = "Worker count must be a positive integer."


class AllSentinels(ComplaintMapError):
    detail = "Every candidate is padding, no unit can win."


class InvalidShape(ComplaintMapError):
    detail = "The requested shape is invalid."


class ParityViolation(ComplaintMapError):
    detail = "The strict parallel engine diverged from the serial engine."


class UsageError(ComplaintMapError):
    """Command-line settings are missing or inconsistent."""

    detail = "Invalid command-line usage."
