"""
Fixtures for setting up the tests shared across the test suite.
"""

import json

import numpy as np
import pytest

from src.bench import synth_corpus
from src.entities import DocTermMatrix, MapGeometry, TrainingSchedule, Weighting


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")


@pytest.fixture(scope="session")
def clusters() -> tuple[DocTermMatrix, np.ndarray]:
    """A small corpus of three well-separated synthetic clusters with their true labels."""
    return synth_corpus(clusters=3, docs_per_cluster=20, dims=60, sparsity=0.95, seed=7)


@pytest.fixture(scope="session")
def sparse_data() -> DocTermMatrix:
    """A sparse normalised TF-IDF matrix for engine comparisons."""
    data, _ = synth_corpus(clusters=4, docs_per_cluster=10, dims=80, seed=3)
    return data


@pytest.fixture
def small_geometry() -> MapGeometry:
    return MapGeometry.from_sides(3, 4, 300, m=40)


@pytest.fixture
def schedule(small_geometry: MapGeometry) -> TrainingSchedule:
    return TrainingSchedule.for_geometry(small_geometry, seed=11)


@pytest.fixture
def unit_rows() -> DocTermMatrix:
    """Four nonnegative unit-length rows in two dimensions."""
    rows = [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8], [0.8, 0.6]]
    return DocTermMatrix.from_dense(rows, weighting=Weighting.TF, normalized=True)


@pytest.fixture
def complaints(tmp_path) -> str:
    """A JSONL file with five labelled complaints."""
    records = [
        {"id": "c1", "text": "My ATM card was blocked without notice.", "severity": 2},
        {"id": "c2", "text": "The loan interest rate was changed twice.", "severity": 1},
        {"id": "c3", "text": "Credit card charges appeared on my statement.", "severity": 2},
        {"id": "c4", "text": "ATM withdrawal failed but the account was debited.", "severity": 2},
        {"id": "c5", "text": "Loan statement shows wrong interest charges.", "severity": 1},
    ]
    path = tmp_path / "complaints.jsonl"
    path.write_text("\n".join(json.dumps(record) for record in records) + "\n", encoding="utf-8")
    return str(path)
