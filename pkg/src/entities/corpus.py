"""
Entity (model) definitions for documents, vocabularies and document-term matrices.
"""

from functools import cached_property
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import sparse

from .base import ArrayModel
from .utils import Severity, Weighting

__all__ = [
    "Document",
    "TokenizerConfig",
    "Vocabulary",
    "DocTermMatrix",
    "Corpus",
]


class Document(BaseModel):
    """A single customer complaint, the unit of ingestion."""

    id: str = Field(min_length=1, description="Unique document identifier.")
    text: str = Field(description="Complaint text.")
    severity: Severity | None = Field(
        default=None,
        description="Optional human label, 1 for moderate and 2 for severe.",
    )

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "id": "c-0001",
                "text": "My ATM card was blocked without any notice.",
                "severity": 2,
            }
        }
    )


class TokenizerConfig(BaseModel):
    """Settings of the tokenizer."""

    stopwords: frozenset[str] = Field(default_factory=frozenset)
    min_token_len: int = Field(default=3, ge=1)
    stem: bool = Field(
        default=False,
        description="Whether to strip trailing 'ing', 'ed' and 's'.",
    )


class Vocabulary(BaseModel):
    """Lexicographically ordered terms of a corpus with their document frequencies."""

    terms: list[str] = Field(default_factory=list)
    doc_frequency: list[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_terms(self) -> Self:
        """Ensure the terms are unique, sorted and have positive frequencies."""
        if len(self.terms) != len(self.doc_frequency):
            raise ValueError("terms and doc_frequency must have the same length")
        if any(a >= b for a, b in zip(self.terms, self.terms[1:])):
            raise ValueError("terms must be unique and sorted")
        if any(df < 1 for df in self.doc_frequency):
            raise ValueError("every document frequency must be at least 1")
        return self

    @cached_property
    def index(self) -> dict[str, int]:
        """A mapping of terms to column indices."""
        return {term: i for i, term in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)


class DocTermMatrix(ArrayModel):
    """A sparse m×n matrix of nonnegative per-document term weights."""

    matrix: sparse.csr_matrix = Field(description="Row-major sparse weights.")
    weighting: Weighting = Field(default=Weighting.TF)
    normalized: bool = Field(default=False)
    vocabulary: Vocabulary | None = Field(default=None)

    @field_validator("matrix", mode="before")
    @classmethod
    def to_csr(cls, value):
        """Store weights as canonical float64 CSR without explicit zeros."""
        matrix = sparse.csr_matrix(value, dtype=np.float64)
        matrix.eliminate_zeros()
        matrix.sort_indices()
        if matrix.nnz and (matrix.data < 0).any():
            raise ValueError("weights must be nonnegative")
        if matrix.nnz and not np.isfinite(matrix.data).all():
            raise ValueError("weights must be finite")
        return matrix

    @model_validator(mode="after")
    def check_vocabulary(self) -> Self:
        """Ensure the column count equals the vocabulary size."""
        if self.vocabulary is not None and len(self.vocabulary) != self.n:
            raise ValueError("column count must equal the vocabulary size")
        return self

    @classmethod
    def from_dense(
        cls,
        rows,
        weighting: Weighting = Weighting.TF,
        normalized: bool = False,
        vocabulary: Vocabulary | None = None,
    ) -> Self:
        """
        Create a matrix from a dense array-like of shape (m, n).

        Parameters
        ----------
        rows : array-like
            Nonnegative weights.
        weighting : Weighting
            Weighting scheme to tag the matrix with.
        normalized : bool
            Whether the rows are already L2-normalised.
        vocabulary : Vocabulary | None
            Optional vocabulary matching the columns.

        Returns
        -------
        DocTermMatrix
            The sparse matrix.
        """
        array = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        return cls(
            matrix=sparse.csr_matrix(array),
            weighting=weighting,
            normalized=normalized,
            vocabulary=vocabulary,
        )

    @property
    def m(self) -> int:
        """Document count."""
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        """Term count."""
        return self.matrix.shape[1]

    @property
    def nnz(self) -> int:
        """Number of stored entries."""
        return self.matrix.nnz

    def row(self, i: int) -> np.ndarray:
        """Get a row as a dense vector."""
        start, end = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        vector = np.zeros(self.n, dtype=np.float64)
        vector[self.matrix.indices[start:end]] = self.matrix.data[start:end]
        return vector

    def row_norms(self) -> np.ndarray:
        """L2 norm of each row."""
        return np.sqrt(np.asarray(self.matrix.multiply(self.matrix).sum(axis=1)).ravel())

    def nonzero_rows(self) -> np.ndarray:
        """Indices of rows with at least one stored entry."""
        return np.flatnonzero(np.diff(self.matrix.indptr) > 0)

    def to_dense(self) -> np.ndarray:
        """Densify the matrix."""
        return self.matrix.toarray()


class Corpus(BaseModel):
    """Ingested documents together with their token lists and vocabulary."""

    documents: list[Document]
    tokens: list[list[str]]
    vocabulary: Vocabulary
    tokenizer: TokenizerConfig = Field(default_factory=TokenizerConfig)

    @model_validator(mode="after")
    def check_alignment(self) -> Self:
        """Ensure there is one token list per document and ids are unique."""
        if len(self.documents) != len(self.tokens):
            raise ValueError("there must be one token list per document")
        ids = [document.id for document in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("document ids must be unique")
        return self

    @property
    def empty_count(self) -> int:
        """Number of documents left without tokens after preprocessing."""
        return sum(1 for tokens in self.tokens if not tokens)

    @property
    def labelled_count(self) -> int:
        """Number of documents with a severity label."""
        return sum(1 for document in self.documents if document.severity is not None)
