"""
End-to-end tests of the command-line pipeline through `main.main`.
"""

import json

import pandas as pd
import pytest
from lxml import etree
from pytest import mark

import main
from src import storage
from src.entities import Engine, NodeDecoration, NodeSeverity, Weighting

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def workspace(tmp_path, complaints: str) -> dict[str, str]:
    """Paths of the pipeline artefacts, with the corpus and matrix already built."""
    paths = {
        "complaints": complaints,
        "corpus": str(tmp_path / "corpus.json"),
        "dtm": str(tmp_path / "matrix.dtm"),
        "map": str(tmp_path / "model.som"),
    }
    assert main.main(["ingest", "--input", complaints, "--output", paths["corpus"]]) == 0
    assert main.main(["dtm", "--input", paths["corpus"], "--output", paths["dtm"]]) == 0
    return paths


def test_pipeline(tmp_path, workspace: dict[str, str], capsys):
    assert main.main(["train", "--input", workspace["dtm"], "--output", workspace["map"]]) == 0
    out = capsys.readouterr().out
    assert "QE: " in out
    assert "TE: " in out
    assert "engine: serial" in out
    metadata = storage.read_metadata(storage.metadata_path(workspace["map"]))
    assert 0.0 <= metadata.topographic_error <= 1.0

    csv = str(tmp_path / "assignments.csv")
    args = ["assign", "--input", workspace["map"], "--corpus", workspace["corpus"], "--output", csv]
    assert main.main(args) == 0
    df = pd.read_csv(csv, dtype={"id": str})
    assert df["id"].tolist() == ["c1", "c2", "c3", "c4", "c5"]

    svg = tmp_path / "map.svg"
    args = [
        "viz",
        "--input",
        workspace["map"],
        "--dtm",
        workspace["dtm"],
        "--corpus",
        workspace["corpus"],
        "--output",
        str(svg),
        "--show-counts",
    ]
    assert main.main(args) == 0
    trained = storage.read_map(workspace["map"])
    root = etree.parse(str(svg)).getroot()
    assert len(root.findall(f".//{SVG}polygon")) == trained.codebook.nn
    records = json.loads((tmp_path / "map.json").read_text(encoding="utf-8"))
    decorations = [NodeDecoration.model_validate(record) for record in records]
    assert sum(d.doc_count for d in decorations) == 5
    assert {d.severity_label for d in decorations} <= set(NodeSeverity)
    assert any(d.top_terms for d in decorations)


def test_ingest_summary(tmp_path, complaints: str, capsys):
    output = str(tmp_path / "corpus.json")
    assert main.main(["ingest", "--input", complaints, "--output", output, "--stem"]) == 0
    assert "documents: 5" in capsys.readouterr().out
    corpus = storage.read_corpus(output)
    assert corpus.tokenizer.stem
    assert corpus.labelled_count == 5


def test_dtm_weighting_from_config(tmp_path, workspace: dict[str, str]):
    config = tmp_path / "settings.env"
    config.write_text("weighting=tf\n", encoding="utf-8")
    output = str(tmp_path / "tf.dtm")
    args = ["dtm", "--input", workspace["corpus"], "--output", output, "--config", str(config)]
    assert main.main(args) == 0
    assert storage.read_dtm(output).weighting == Weighting.TF
    # flags win over the settings file
    args += ["--weighting", "tfidf"]
    assert main.main(args) == 0
    assert storage.read_dtm(output).weighting == Weighting.TFIDF


def test_engines_write_identical_maps(tmp_path, workspace: dict[str, str]):
    outputs = []
    for engine in ("serial", "parallel-strict"):
        output = tmp_path / f"{engine}.som"
        args = ["train", "--input", workspace["dtm"], "--output", str(output), "--engine", engine]
        assert main.main(args + ["--workers", "3", "--seed", "5"]) == 0
        outputs.append(output)
    assert outputs[0].read_bytes() == outputs[1].read_bytes()
    metadata = storage.read_metadata(storage.metadata_path(outputs[1]))
    assert metadata.engine == Engine.PARALLEL_STRICT
    assert metadata.workers == 3


def test_workers_from_environment(tmp_path, workspace: dict[str, str], monkeypatch):
    monkeypatch.setenv("SOM_WORKERS", "2")
    output = str(tmp_path / "model.som")
    args = ["train", "--input", workspace["dtm"], "--output", output, "--engine", "parallel-fast"]
    assert main.main(args) == 0
    assert storage.read_metadata(storage.metadata_path(output)).workers == 2


def test_viz_single_unit_without_labels(tmp_path, workspace: dict[str, str]):
    args = ["train", "--input", workspace["dtm"], "--output", workspace["map"]]
    assert main.main(args + ["--rows", "1", "--cols", "1", "--iters", "10"]) == 0
    svg = tmp_path / "single.svg"
    assert main.main(["viz", "--input", workspace["map"], "--output", str(svg)]) == 0
    root = etree.parse(str(svg)).getroot()
    assert len(root.findall(f".//{SVG}polygon")) == 1
    decorations = json.loads((tmp_path / "single.json").read_text(encoding="utf-8"))
    assert decorations[0]["severity_label"] == "none"
    assert decorations[0]["doc_count"] == 5
    assert decorations[0]["top_terms"] == []


def test_bench_parity(tmp_path, capsys):
    output = tmp_path / "parity.csv"
    args = ["bench", "--study", "parity", "--dataset", "clusters", "--iters", "300"]
    assert main.main(args + ["--workers", "2", "--output", str(output)]) == 0
    df = pd.read_csv(output)
    assert df["engine"].tolist() == [engine.value for engine in Engine]
    assert df.loc[0, "qe"] == df.loc[1, "qe"]
    assert df.loc[1, "qe_gap"] == 0.0
    out = capsys.readouterr().out
    assert "parallel-fast: " in out
    assert "largest QE gap" in out


def test_bench_scaling(tmp_path, capsys):
    output = tmp_path / "scaling.csv"
    args = ["bench", "--study", "scaling", "--sides", "2,3", "--dim", "8", "--iters", "100"]
    assert main.main(args + ["--output", str(output)]) == 0
    df = pd.read_csv(output)
    assert len(df) == 4
    assert df["ratio_of_increase"].notna().sum() == 2
    assert "time ratios" in capsys.readouterr().out


@mark.parametrize(
    "args",
    [
        ["train", "--input", "DTM", "--output", "OUT", "--rows", "3", "--cols", "4"],
        ["train", "--input", "DTM"],
        ["bench", "--study", "scaling", "--sides", "8,4", "--output", "OUT"],
        ["bench", "--study", "parity"],
    ],
)
def test_usage_errors(tmp_path, workspace: dict[str, str], args: list[str]):
    paths = {"DTM": workspace["dtm"], "OUT": str(tmp_path / "out")}
    assert main.main([paths.get(a, a) for a in args]) == 2


def test_unknown_weighting_in_config(tmp_path, workspace: dict[str, str]):
    config = tmp_path / "settings.env"
    config.write_text("WEIGHTING=bm25\n", encoding="utf-8")
    args = ["dtm", "--input", workspace["corpus"], "--output", str(tmp_path / "x.dtm")]
    assert main.main(args + ["--config", str(config)]) == 2


def test_unknown_engine_flag(workspace: dict[str, str]):
    with pytest.raises(SystemExit) as e:
        main.main(["train", "--input", workspace["dtm"], "--engine", "gpu"])
    assert e.value.code == 2


def test_malformed_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"id": "a", "text": "fine"}\n{"id": "b"\n', encoding="utf-8")
    args = ["ingest", "--input", str(path), "--output", str(tmp_path / "corpus.json")]
    assert main.main(args) == 1


def test_invalid_utf8_line(tmp_path, capsys):
    path = tmp_path / "latin1.jsonl"
    path.write_bytes(b'{"id": "a", "text": "fine"}\n{"id": "b", "text": "caf\xe9"}\n')
    args = ["ingest", "--input", str(path), "--output", str(tmp_path / "corpus.json")]
    assert main.main(args) == 1
    assert "line 2" in capsys.readouterr().err


@mark.parametrize(
    "name,value",
    [
        ("SOM_WORKERS", "four"),
        ("SOM_WORKERS", "0"),
        ("SOM_WORKERS", "-2"),
        ("SOM_SEED", "abc"),
        ("SOM_SEED", "-1"),
    ],
)
def test_invalid_environment(tmp_path, workspace: dict[str, str], monkeypatch, capsys, name, value):
    monkeypatch.setenv(name, value)
    args = ["train", "--input", workspace["dtm"], "--output", str(tmp_path / "model.som")]
    assert main.main(args) == 2
    assert name in capsys.readouterr().err


def test_training_on_zero_matrix(tmp_path):
    path = tmp_path / "same.jsonl"
    records = [{"id": str(i), "text": "loan interest rate"} for i in range(3)]
    path.write_text("\n".join(json.dumps(r) for r in records), encoding="utf-8")
    corpus, dtm = str(tmp_path / "corpus.json"), str(tmp_path / "matrix.dtm")
    assert main.main(["ingest", "--input", str(path), "--output", corpus]) == 0
    # every term occurs in every document, so all TF-IDF weights vanish
    assert main.main(["dtm", "--input", corpus, "--output", dtm]) == 0
    assert main.main(["train", "--input", dtm, "--output", str(tmp_path / "model.som")]) == 1


def test_missing_input_file(tmp_path):
    args = ["train", "--input", str(tmp_path / "missing.dtm"), "--output", str(tmp_path / "m.som")]
    assert main.main(args) == 1
