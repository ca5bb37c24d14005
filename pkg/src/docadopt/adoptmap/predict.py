"""Sentence- and section-level adoption-criterion prediction."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from docadopt.adoptmap.merge import MergedTopicModel
from docadopt.adoptmap.tois import LABELS, OUTLIER_LABEL
from docadopt.embed.base import EmbeddingProvider, cosine
from docadopt.ingest.records import Section, Sentence, sentence_id_for
from docadopt.ingest.sentences import split_sentences

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SentencePrediction:
    sentence_id: str | None
    text: str
    label: str
    sims: dict[str, float]
    tie: bool = False


@dataclass(frozen=True)
class SectionPrediction:
    """Argmax over per-label sums of sentence similarities."""

    section_id: str
    label: str
    sums: dict[str, float]
    tie: bool
    sentences: tuple[SentencePrediction, ...]

    def to_json(self) -> dict:
        return {
            "section_id": self.section_id,
            "label": self.label,
            "sums": {k: float(v) for k, v in self.sums.items()},
            "tie": self.tie,
            "sentences": [
                {
                    "sentence_id": s.sentence_id,
                    "label": s.label,
                    "sims": {k: float(v) for k, v in s.sims.items()},
                }
                for s in self.sentences
            ],
        }


def _candidates(merged: MergedTopicModel) -> list:
    out = [
        lt for lt in merged.label_topics if not lt.empty and lt.embedding is not None
    ]
    if not out:
        raise ValueError("merged model has no non-empty labels to predict with")
    return out


def _argmax_label(scores: dict[str, float], candidates: Sequence[str]) -> tuple[str, bool]:
    """First label in declaration order attaining the maximum; tie flag."""
    best = max(scores[label] for label in candidates)
    winners = [label for label in LABELS if label in candidates and scores[label] == best]
    if len(winners) > 1:
        log.info("label tie at %.6f between %s; keeping %r", best, winners, winners[0])
    return winners[0], len(winners) > 1


def predict_sentence(
    sentence: Sentence | str,
    merged: MergedTopicModel,
    provider: EmbeddingProvider,
) -> SentencePrediction:
    """Label one sentence by cosine to each label embedding.

    Empty labels score 0 and are never selected; an empty sentence is
    Outlier with all-zero similarities.
    """
    if isinstance(sentence, Sentence):
        sentence_id, text = sentence.sentence_id, sentence.text
    else:
        sentence_id, text = None, sentence
    sims = {label: 0.0 for label in LABELS}
    if not text.strip():
        return SentencePrediction(
            sentence_id=sentence_id, text=text, label=OUTLIER_LABEL, sims=sims
        )
    candidates = _candidates(merged)
    vec = np.asarray(provider.embed([text])[0], dtype=np.float64)
    for lt in candidates:
        sims[lt.label] = cosine(vec, lt.embedding)
    label, tie = _argmax_label(sims, [lt.label for lt in candidates])
    return SentencePrediction(
        sentence_id=sentence_id, text=text, label=label, sims=sims, tie=tie
    )


def predict_section(
    section: Section | str,
    merged: MergedTopicModel,
    provider: EmbeddingProvider,
) -> SectionPrediction:
    """Label a section by the per-label sum of its sentences' similarities."""
    if isinstance(section, Section):
        section_id, text = section.section_id, section.text
    else:
        section_id, text = "adhoc-" + sentence_id_for(section)[4:], section
    texts = split_sentences(text)
    if not texts:
        raise ValueError("section has no sentences to predict on")
    candidates = [lt.label for lt in _candidates(merged)]
    details = tuple(
        predict_sentence(
            Sentence(sentence_id=sentence_id_for(t), section_id=section_id, text=t),
            merged,
            provider,
        )
        for t in texts
    )
    sums = {label: 0.0 for label in LABELS}
    for det in details:
        for label in LABELS:
            sums[label] += det.sims[label]
    label, tie = _argmax_label(sums, candidates)
    return SectionPrediction(
        section_id=section_id, label=label, sums=sums, tie=tie, sentences=details
    )


def predict_corpus_sections(
    sections: Sequence[Section],
    merged: MergedTopicModel,
    provider: EmbeddingProvider,
) -> list[SectionPrediction]:
    return [predict_section(s, merged, provider) for s in sections]


def write_predictions(preds: Sequence[SectionPrediction], path: str | Path) -> None:
    """Predictions as JSON lines, one section per line."""
    with Path(path).open("w") as fh:
        for pred in preds:
            fh.write(json.dumps(pred.to_json()) + "\n")


def read_predictions(path: str | Path) -> list[SectionPrediction]:
    out = []
    with Path(path).open() as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            out.append(
                SectionPrediction(
                    section_id=row["section_id"],
                    label=row["label"],
                    sums={k: float(v) for k, v in row["sums"].items()},
                    tie=bool(row["tie"]),
                    sentences=tuple(
                        SentencePrediction(
                            sentence_id=s["sentence_id"],
                            text="",
                            label=s["label"],
                            sims={k: float(v) for k, v in s["sims"].items()},
                        )
                        for s in row["sentences"]
                    ),
                )
            )
    return out
