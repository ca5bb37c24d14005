"""CLI end-to-end runs over the fixture mirror, plus the exit protocol."""

import json
from pathlib import Path

import pytest

from docadopt.adoptmap.merge import load_merged
from docadopt.adoptmap.predict import predict_section, read_predictions
from docadopt.adoptmap.tois import LABELS
from docadopt.cli import cli_dispatch
from docadopt.corpus.index import load_index
from docadopt.evalkit import gold_map, load_groundtruth, weighted_metrics
from docadopt.topics.model import load_model

from conftest import FIXTURE_DISTANCE, FIXTURES


@pytest.fixture(scope="module")
def cli_artifacts(tmp_path_factory, fixture_corpus_dir):
    """Fit and merge through the CLI with the fixture recipe."""
    root = tmp_path_factory.mktemp("cli")
    model_dir = root / "model"
    merged_dir = root / "merged"
    code = cli_dispatch(
        [
            "topics", "fit",
            "--corpus", str(fixture_corpus_dir),
            "--out", str(model_dir),
            "--provider", "hash",
            "--provider-dim", "64",
            "--reducer", "pca",
            "--clusterer", "threshold",
            "--cluster-distance", str(FIXTURE_DISTANCE),
            "--min-cluster-size", "20",
        ]
    )
    assert code == 0
    code = cli_dispatch(
        ["adoptmap", "merge", "--model", str(model_dir), "--out", str(merged_dir)]
    )
    assert code == 0
    return {"root": root, "model": model_dir, "merged": merged_dir}


def test_exit_protocol():
    assert cli_dispatch(["--help"]) == 0
    assert cli_dispatch(["--version"]) == 0
    # usage errors exit 2
    assert cli_dispatch(["corpus", "build"]) == 2
    assert cli_dispatch(["no-such-command"]) == 2
    # operational failures exit 1
    assert cli_dispatch(["ingest", "discover", "--domain", "not-a-domain"]) == 1


def test_predict_source_exclusivity(cli_artifacts, fixture_corpus_dir):
    merged = str(cli_artifacts["merged"])
    assert (
        cli_dispatch(
            ["adoptmap", "predict", "--model", merged, "--text", "x", "--corpus", str(fixture_corpus_dir)]
        )
        == 2
    )
    assert cli_dispatch(["adoptmap", "predict", "--model", merged]) == 2


def test_ingest_parse_fixture_mirror(tmp_path):
    out = tmp_path / "pages.jsonl"
    code = cli_dispatch(
        [
            "ingest", "parse",
            "--mirror", str(FIXTURES / "sites" / "demo__demoproj"),
            "--out", str(out),
        ]
    )
    assert code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines() if line.strip()]
    assert rows
    for row in rows:
        assert set(row) == {"page_id", "path", "title", "sections"}
        for section in row["sections"]:
            assert section["section_id"].startswith("sec-")
            assert section["heading_path"]
            assert section["text"].strip()


def test_corpus_index_command(fixture_corpus_dir, tmp_path):
    out = tmp_path / "index.json"
    code = cli_dispatch(
        ["corpus", "index", "--corpus", str(fixture_corpus_dir), "--out", str(out)]
    )
    assert code == 0
    index = load_index(out)
    assert index.n_domains == 6


def test_cli_fit_matches_library_fit(cli_artifacts, fixture_model):
    loaded = load_model(cli_artifacts["model"])
    assert loaded.equals(fixture_model)


def test_cli_merge_matches_library_merge(cli_artifacts, fixture_merged):
    loaded = load_merged(cli_artifacts["merged"])
    assert loaded.equals(fixture_merged)


def test_predict_corpus_writes_jsonl(cli_artifacts, fixture_corpus_dir, fixture_corpus, fixture_merged, hash_provider, tmp_path):
    out = tmp_path / "preds.jsonl"
    code = cli_dispatch(
        [
            "adoptmap", "predict",
            "--model", str(cli_artifacts["merged"]),
            "--corpus", str(fixture_corpus_dir),
            "--out", str(out),
        ]
    )
    assert code == 0
    preds = read_predictions(out)
    assert len(preds) == len(fixture_corpus.sections)
    # spot-check three sections against the library path
    for pred in preds[:3]:
        section = fixture_corpus.section(pred.section_id)
        direct = predict_section(section, fixture_merged, hash_provider)
        assert pred.to_json() == direct.to_json()


def test_predict_adhoc_text(cli_artifacts, capsys):
    code = cli_dispatch(
        [
            "adoptmap", "predict",
            "--model", str(cli_artifacts["merged"]),
            "--text", "This library is released under the MIT license.",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["section_id"].startswith("adhoc-")
    assert payload["label"] in LABELS
    assert set(payload["sums"]) == set(LABELS)


def test_eval_run_matches_library_metrics(
    cli_artifacts, fixture_corpus_dir, fixture_corpus, fixture_merged, hash_provider, tmp_path, capsys
):
    json_out = tmp_path / "report.json"
    code = cli_dispatch(
        [
            "eval", "run",
            "--model", str(cli_artifacts["merged"]),
            "--gold", str(FIXTURES / "gold.csv"),
            "--corpus", str(fixture_corpus_dir),
            "--json", str(json_out),
        ]
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert "weighted F1:" in stdout

    groundtruth = load_groundtruth(FIXTURES / "gold.csv")
    gold = gold_map(groundtruth)
    preds = [
        predict_section(fixture_corpus.section(r.section_id), fixture_merged, hash_provider).label
        for r in groundtruth
    ]
    expected = weighted_metrics(preds, [gold[r.section_id] for r in groundtruth], labels=LABELS)
    report = json.loads(json_out.read_text())
    assert report == expected.to_dict()
    assert f"{expected.weighted_f1:.4f}" in stdout


def test_eval_sweep_grid_file(cli_artifacts, fixture_corpus_dir, tmp_path, capsys):
    grid_file = tmp_path / "grid.json"
    grid_file.write_text(
        json.dumps({"format_version": 1, "grid": {"topics_similarity": [0.3, 0.6]}})
    )
    json_out = tmp_path / "sweep.json"
    code = cli_dispatch(
        [
            "eval", "sweep",
            "--grid", str(grid_file),
            "--model", str(cli_artifacts["model"]),
            "--gold", str(FIXTURES / "gold.csv"),
            "--corpus", str(fixture_corpus_dir),
            "--json", str(json_out),
        ]
    )
    assert code == 0
    assert "topics_similarity=0.3" in capsys.readouterr().out
    rows = json.loads(json_out.read_text())
    assert {r["param"] for r in rows} == {"topics_similarity"}
    assert len(rows) == 2

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format_version": 9, "grid": {"topics_similarity": [0.3]}}))
    assert (
        cli_dispatch(
            [
                "eval", "sweep",
                "--grid", str(bad),
                "--model", str(cli_artifacts["model"]),
                "--gold", str(FIXTURES / "gold.csv"),
                "--corpus", str(fixture_corpus_dir),
            ]
        )
        == 1
    )


def test_mentor_augment_reproduces_golden(fixture_corpus_dir, tmp_path):
    index_file = tmp_path / "index.json"
    assert cli_dispatch(["corpus", "index", "--corpus", str(fixture_corpus_dir), "--out", str(index_file)]) == 0

    out = tmp_path / "aug.json"
    code = cli_dispatch(
        [
            "mentor", "augment",
            "--domain", "machine-learning",
            "--in", str(FIXTURES / "paragraphs" / "license_ml.txt"),
            "--index", str(index_file),
            "--llm", "stub",
            "--stub-seed", "0",
            "--out", str(out),
        ]
    )
    assert code == 0
    produced = json.loads(out.read_text())
    golden = json.loads(
        (FIXTURES / "golden" / "augmentations" / "license_ml.json").read_text()
    )
    assert produced == golden
