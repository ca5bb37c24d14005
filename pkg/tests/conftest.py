"""Shared fixtures: the checked-in mini docs corpus, built once per session.

Everything here is offline and deterministic (hash embeddings, stub LLM),
so session scope is safe.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from docadopt.adoptmap import build_adoption_map
from docadopt.adoptmap.tois import default_tois, seed_from_tois
from docadopt.cli import cli_dispatch
from docadopt.corpus.index import build_index
from docadopt.corpus.store import load_corpus
from docadopt.embed import HashingProvider
from docadopt.topics import PipelineConfig, fit
from docadopt.topics.clusterers import ThresholdClusterer
from docadopt.topics.reducers import PcaReducer

FIXTURES = Path(__file__).parent / "fixtures"

# clustering recipe that separates the four themed page types of the
# fixture corpus under 64-dim hash embeddings
FIXTURE_CONFIG = PipelineConfig(min_cluster_size=20)
FIXTURE_DISTANCE = 0.8


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_corpus_dir(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("corpus")
    code = cli_dispatch(
        [
            "corpus", "build",
            "--mirror", str(FIXTURES / "sites"),
            "--projects", str(FIXTURES / "projects.json"),
            "--out", str(out),
        ]
    )
    assert code == 0, "fixture corpus build failed"
    return out


@pytest.fixture(scope="session")
def fixture_corpus(fixture_corpus_dir):
    return load_corpus(fixture_corpus_dir)


@pytest.fixture(scope="session")
def fixture_index(fixture_corpus):
    return build_index(fixture_corpus)


@pytest.fixture(scope="session")
def hash_provider() -> HashingProvider:
    return HashingProvider(dim=64)


@pytest.fixture(scope="session")
def fixture_model(fixture_corpus, hash_provider):
    return fit(
        tuple(fixture_corpus.sentences),
        hash_provider,
        PcaReducer(),
        ThresholdClusterer(distance_threshold=FIXTURE_DISTANCE),
        seed=seed_from_tois(default_tois()),
        config=FIXTURE_CONFIG,
    )


@pytest.fixture(scope="session")
def fixture_merged(fixture_model, hash_provider):
    return build_adoption_map(fixture_model, default_tois(), hash_provider)


@pytest.fixture(scope="session")
def gold_rows() -> list[dict]:
    import csv

    with open(FIXTURES / "gold.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def load_golden(name: str) -> dict:
    with open(FIXTURES / "golden" / name) as fh:
        return json.load(fh)
