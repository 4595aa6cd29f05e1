"""
Utilities for reading and writing documents, corpora, document-term matrices, trained maps
and their by-products on the local file system.
"""

import logging
import struct
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import TypeAdapter, ValidationError
from scipy import sparse

from . import exceptions
from .entities import (
    BmuResult,
    Codebook,
    Corpus,
    DocTermMatrix,
    Document,
    MapGeometry,
    NodeDecoration,
    RunMetadata,
    TrainedMap,
    TrainingSchedule,
    Vocabulary,
    Weighting,
)

__all__ = [
    "read_documents",
    "write_corpus",
    "read_corpus",
    "write_dtm",
    "read_dtm",
    "write_map",
    "read_map",
    "metadata_path",
    "write_metadata",
    "read_metadata",
    "write_decorations",
    "write_assignments",
]

logger = logging.getLogger(__name__)

DTM_MAGIC = "DTM1"
MAP_MAGIC = b"SOM1"
MAP_VERSION = 1

# magic, version, m, munits, nrows, ncols, num_itr, pc1, pc2, r, size1, size2,
# alpha0, sigma0, k, T, seed, dim
MAP_HEADER = struct.Struct("<4sI5q5d3d2qq")
COUNT = struct.Struct("<q")
QE = struct.Struct("<d")
ASSIGNMENT = np.dtype([("index", "<i8"), ("distance", "<f8")])

DECORATIONS = TypeAdapter(list[NodeDecoration])


def read_documents(path: str | Path) -> list[Document]:
    """
    Read complaints from a JSON Lines file.

    Every non-blank line must be an object with `id` and `text` fields and an
    optional `severity` of 1 or 2.

    Parameters
    ----------
    path : str | Path
        Path to a UTF-8 JSONL file.

    Returns
    -------
    list[Document]
        Documents in file order.

    Raises
    ------
    MalformedInput
        If a line is not valid UTF-8 or JSON, misses a field or repeats an id.
    """
    documents, seen = [], set()
    with open(path, "rb") as file:
        for number, raw in enumerate(file, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                message = f"invalid UTF-8 at byte {e.start}"
                raise exceptions.MalformedInput(message, line=number) from e
            if not line.strip():
                continue
            try:
                document = Document.model_validate_json(line)
            except ValidationError as e:
                error = e.errors()[0]
                field = ".".join(str(x) for x in error["loc"])
                message = f"{field}: {error['msg']}" if field else error["msg"]
                raise exceptions.MalformedInput(message, line=number) from e
            if document.id in seen:
                raise exceptions.MalformedInput(f"duplicate id '{document.id}'", line=number)
            seen.add(document.id)
            documents.append(document)
    logger.info("read %d documents from %s", len(documents), path)
    return documents


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus to a JSON file."""
    Path(path).write_text(corpus.model_dump_json(), encoding="utf-8")


def read_corpus(path: str | Path) -> Corpus:
    """
    Read a corpus from a JSON file.

    Raises
    ------
    FormatError
        If the file does not hold a valid corpus.
    """
    try:
        return Corpus.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise exceptions.FormatError(f"{path} is not a corpus file") from e


def write_dtm(dtm: DocTermMatrix, path: str | Path) -> None:
    """
    Write a document-term matrix to a text container.

    The first line is `DTM1 <m> <n> <nnz> <weighting> <normalized>`, followed by
    n vocabulary terms, n document frequencies and m rows of space-separated
    `index:weight` pairs in ascending index order.

    Parameters
    ----------
    dtm : DocTermMatrix
        Matrix with a vocabulary.
    path : str | Path
        Destination path.
    """
    if dtm.vocabulary is None:
        raise ValueError("only matrices with a vocabulary can be written")
    matrix = dtm.matrix
    lines = [f"{DTM_MAGIC} {dtm.m} {dtm.n} {dtm.nnz} {dtm.weighting} {int(dtm.normalized)}"]
    lines.extend(dtm.vocabulary.terms)
    lines.extend(str(df) for df in dtm.vocabulary.doc_frequency)
    for i in range(dtm.m):
        start, end = matrix.indptr[i], matrix.indptr[i + 1]
        pairs = zip(matrix.indices[start:end], matrix.data[start:end])
        lines.append(" ".join(f"{j}:{float(w)!r}" for j, w in pairs))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_dtm(path: str | Path) -> DocTermMatrix:
    """
    Read a document-term matrix written by `write_dtm`.

    Raises
    ------
    FormatError
        If the header is invalid or the file is truncated.
    """
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    try:
        magic, m, n, nnz, weighting, normalized = lines[0].split()
        if magic != DTM_MAGIC:
            raise ValueError(f"unexpected magic '{magic}'")
        m, n, nnz = int(m), int(n), int(nnz)
        if len(lines) < 1 + 2 * n + m:
            raise ValueError("file is truncated")
        terms = lines[1 : 1 + n]
        doc_frequency = [int(x) for x in lines[1 + n : 1 + 2 * n]]
        indptr, indices, data = [0], [], []
        for line in lines[1 + 2 * n : 1 + 2 * n + m]:
            for pair in line.split():
                j, w = pair.split(":")
                indices.append(int(j))
                data.append(float(w))
            indptr.append(len(indices))
        if len(indices) != nnz:
            raise ValueError(f"expected {nnz} entries, found {len(indices)}")
        matrix = sparse.csr_matrix((data, indices, indptr), shape=(m, n))
        return DocTermMatrix(
            matrix=matrix,
            weighting=Weighting(weighting),
            normalized=normalized == "1",
            vocabulary=Vocabulary(terms=terms, doc_frequency=doc_frequency),
        )
    except (ValueError, IndexError) as e:
        # pydantic's ValidationError is a ValueError
        raise exceptions.FormatError(f"{path}: {e}") from e


def write_map(trained: TrainedMap, path: str | Path) -> None:
    """
    Write a trained map to a little-endian binary container.

    The container holds the header, the weights as row-major float64, one
    (index, distance) pair per assignment and the quantization error. The engine
    and timing are left out so that engines producing the same map produce the
    same bytes.

    Parameters
    ----------
    trained : TrainedMap
        Map to write.
    path : str | Path
        Destination path.
    """
    g, s, cb = trained.geometry, trained.schedule, trained.codebook
    header = MAP_HEADER.pack(
        MAP_MAGIC,
        MAP_VERSION,
        g.m,
        g.munits,
        g.nrows,
        g.ncols,
        g.num_itr,
        g.pc1,
        g.pc2,
        g.r,
        g.size1,
        g.size2,
        s.alpha0,
        s.sigma0,
        s.k,
        s.T,
        s.seed,
        cb.dim,
    )
    assignments = np.array(
        [(a.index, a.distance) for a in trained.assignments],
        dtype=ASSIGNMENT,
    )
    with open(path, "wb") as file:
        file.write(header)
        file.write(cb.weights.astype("<f8", copy=False).tobytes(order="C"))
        file.write(COUNT.pack(len(assignments)))
        file.write(assignments.tobytes())
        file.write(QE.pack(trained.quantization_error))


def read_map(path: str | Path, metadata: RunMetadata | None = None) -> TrainedMap:
    """
    Read a trained map written by `write_map`.

    Parameters
    ----------
    path : str | Path
        Path to the binary container.
    metadata : RunMetadata | None
        Engine and timing to attach, read from the sidecar file if present when None.

    Returns
    -------
    TrainedMap
        The trained map.

    Raises
    ------
    FormatError
        If the magic or version is wrong or the file is truncated.
    """
    buffer = Path(path).read_bytes()
    if len(buffer) < MAP_HEADER.size or buffer[:4] != MAP_MAGIC:
        raise exceptions.FormatError(f"{path} is not a trained map file")
    (
        _,
        version,
        m,
        munits,
        nrows,
        ncols,
        num_itr,
        pc1,
        pc2,
        r,
        size1,
        size2,
        alpha0,
        sigma0,
        k,
        T,
        seed,
        dim,
    ) = MAP_HEADER.unpack_from(buffer)
    if version != MAP_VERSION:
        raise exceptions.FormatError(f"unsupported map version {version}")
    offset = MAP_HEADER.size
    try:
        nn = nrows * ncols
        weights = np.frombuffer(buffer, dtype="<f8", count=nn * dim, offset=offset)
        offset += weights.nbytes
        (count,) = COUNT.unpack_from(buffer, offset)
        offset += COUNT.size
        assignments = np.frombuffer(buffer, dtype=ASSIGNMENT, count=count, offset=offset)
        offset += assignments.nbytes
        (qe,) = QE.unpack_from(buffer, offset)
    except (ValueError, struct.error) as e:
        raise exceptions.FormatError(f"{path} is truncated") from e

    if metadata is None and metadata_path(path).exists():
        metadata = read_metadata(metadata_path(path))
    codebook = Codebook(nrows=nrows, ncols=ncols, weights=weights.reshape(nn, dim).astype(np.float64))
    extra = {}
    if metadata is not None:
        extra = {
            "engine": metadata.engine,
            "workers": metadata.workers,
            "wall_seconds": metadata.wall_seconds,
        }
    return TrainedMap(
        codebook=codebook,
        geometry=MapGeometry(
            m=m,
            munits=munits,
            pc1=pc1,
            pc2=pc2,
            r=r,
            size1=size1,
            size2=size2,
            nrows=nrows,
            ncols=ncols,
            num_itr=num_itr,
        ),
        schedule=TrainingSchedule(alpha0=alpha0, sigma0=sigma0, T=T, k=k, seed=seed),
        assignments=[
            BmuResult(index=int(i), coords=codebook.coords(i), distance=float(d))
            for i, d in assignments
        ],
        quantization_error=qe,
        **extra,
    )


def metadata_path(path: str | Path) -> Path:
    """Get the path of the JSON sidecar that accompanies a map file."""
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_metadata(
    trained: TrainedMap,
    path: str | Path,
    topographic_error: float | None = None,
) -> RunMetadata:
    """
    Write the engine, worker count, timing and map quality of a run to a JSON sidecar.

    Parameters
    ----------
    trained : TrainedMap
        Trained map whose run is described.
    path : str | Path
        Path of the sidecar file.
    topographic_error : float | None
        Topographic error of the trained map, written as null if None.

    Returns
    -------
    RunMetadata
        The metadata written.
    """
    metadata = RunMetadata(
        engine=trained.engine,
        workers=trained.workers,
        wall_seconds=trained.wall_seconds,
        topographic_error=topographic_error,
    )
    Path(path).write_text(metadata.model_dump_json(indent=2), encoding="utf-8")
    return metadata


def read_metadata(path: str | Path) -> RunMetadata:
    """Read run metadata from a JSON sidecar."""
    return RunMetadata.model_validate_json(Path(path).read_text(encoding="utf-8"))


def write_decorations(decorations: list[NodeDecoration], path: str | Path) -> None:
    """Write node decorations to a JSON file."""
    Path(path).write_bytes(DECORATIONS.dump_json(decorations, indent=2))


def write_assignments(
    assignments: list[BmuResult],
    path: str | Path,
    ids: list[str] | None = None,
) -> pd.DataFrame:
    """
    Write the best matching unit of every document to a CSV file.

    Parameters
    ----------
    assignments : list[BmuResult]
        One assignment per document.
    path : str | Path
        Destination path.
    ids : list[str] | None
        Document ids, row indices are used if None.

    Returns
    -------
    df : pd.DataFrame
        The table written, with columns `id`, `unit`, `row`, `col` and `distance`.
    """
    if ids is None:
        ids = [str(i) for i in range(len(assignments))]
    if len(ids) != len(assignments):
        raise exceptions.DimensionMismatch(
            f"{len(ids)} ids for {len(assignments)} assignments"
        )
    df = pd.DataFrame(
        {
            "id": ids,
            "unit": [a.index for a in assignments],
            "row": [a.coords[0] for a in assignments],
            "col": [a.coords[1] for a in assignments],
            "distance": [a.distance for a in assignments],
        }
    )
    df.to_csv(path, index=False)
    return df
