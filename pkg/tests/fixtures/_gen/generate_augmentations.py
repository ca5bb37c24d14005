"""Regenerates the golden augmentation fixtures.

Run from the repo root after changing the fixture sites, the paragraph
fixtures, or the mentor pipeline itself:

    python3 tests/fixtures/_gen/generate_augmentations.py

Outputs are deterministic (stub LLM, hashed embeddings are not involved)
and are checked in; tests never run this script.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from docadopt.config import load_toi_config
from docadopt.corpus.index import build_index
from docadopt.corpus.store import load_corpus
from docadopt.ingest.records import ProjectRef
from docadopt.mentor import StubLlmProvider, augment

FIXTURES = Path(__file__).resolve().parent.parent
PARAGRAPHS = {
    "license_ml": "machine-learning",
    "functional_web": "web-framework",
    "compatibility_db": "database",
    "maintenance_net": "networking",
}


def build_fixture_index():
    from docadopt.cli import cli_dispatch

    with tempfile.TemporaryDirectory() as tmp:
        code = cli_dispatch(
            [
                "corpus",
                "build",
                "--mirror",
                str(FIXTURES / "sites"),
                "--projects",
                str(FIXTURES / "projects.json"),
                "--out",
                tmp,
            ]
        )
        if code != 0:
            raise SystemExit("corpus build failed")
        corpus = load_corpus(tmp)
    return build_index(corpus)


def main() -> None:
    index = build_fixture_index()
    llm = StubLlmProvider(seed=0)
    out_dir = FIXTURES / "golden" / "augmentations"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, domain in PARAGRAPHS.items():
        paragraph = (FIXTURES / "paragraphs" / f"{name}.txt").read_text().strip()
        result = augment(paragraph, domain, index, llm)
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")
        terms = [(t.term, t.source) for t in result.terms]
        print(f"{name}: degraded={result.degraded} terms={terms}")


if __name__ == "__main__":
    main()
