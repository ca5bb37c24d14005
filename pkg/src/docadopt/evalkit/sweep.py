"""One-at-a-time hyperparameter sweep over the merge stage.

Each row changes exactly one hyperparameter from the fixed baseline, rebuilds
the adoption map (refitting the topic model only when a pipeline parameter is
swept), and scores section predictions against groundtruth. Rows that fail
are recorded and the sweep continues.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from typing import Callable, Mapping, Sequence

from ..adoptmap.merge import build_adoption_map
from ..adoptmap.predict import predict_section
from ..adoptmap.tois import LABELS, Thresholds, ToiSpec
from ..embed.base import EmbeddingProvider
from ..ingest.records import Section
from ..topics.config import PipelineConfig
from ..topics.model import TopicModel
from .groundtruth import LabeledSection, gold_map
from .metrics import MetricsReport, weighted_metrics

_THRESHOLD_FIELDS = frozenset(f.name for f in fields(Thresholds))
_PIPELINE_FIELDS = frozenset(f.name for f in fields(PipelineConfig))


@dataclass(frozen=True)
class SweepFixture:
    """Everything held fixed across sweep rows."""

    model: TopicModel
    provider: EmbeddingProvider
    tois: tuple[ToiSpec, ...]
    thresholds: Thresholds
    sections: tuple[Section, ...]
    groundtruth: tuple[LabeledSection, ...]

    def __post_init__(self):
        if not self.groundtruth:
            raise ValueError("groundtruth must be non-empty")
        by_id = {s.section_id: s for s in self.sections}
        missing = [g.section_id for g in self.groundtruth if g.section_id not in by_id]
        if missing:
            raise ValueError(f"groundtruth references unknown sections: {missing[:5]}")


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: object
    weighted_f1: float | None
    weighted_precision: float | None = None
    weighted_recall: float | None = None
    error: str | None = None

    @property
    def config_key(self) -> str:
        return f"{self.param}={json.dumps(self.value)}"

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "value": self.value,
            "weighted_f1": self.weighted_f1,
            "weighted_precision": self.weighted_precision,
            "weighted_recall": self.weighted_recall,
            "error": self.error,
        }


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.rows], ensure_ascii=False, sort_keys=True, indent=2)

    def format_table(self) -> str:
        key_width = max([len("config")] + [len(r.config_key) for r in self.rows])
        lines = [f"{'config':<{key_width}}  weighted_f1"]
        for r in self.rows:
            shown = f"{r.weighted_f1:.4f}" if r.ok else f"FAILED: {r.error}"
            lines.append(f"{r.config_key:<{key_width}}  {shown}")
        return "\n".join(lines)


def evaluate_map(
    model: TopicModel,
    tois: Sequence[ToiSpec],
    provider: EmbeddingProvider,
    thresholds: Thresholds,
    sections: Sequence[Section],
    groundtruth: Sequence[LabeledSection],
) -> MetricsReport:
    """Build the adoption map and score it against groundtruth sections."""
    merged = build_adoption_map(model, tuple(tois), provider, thresholds)
    by_id = {s.section_id: s for s in sections}
    gold = gold_map(groundtruth)
    preds = []
    golds = []
    for row in groundtruth:
        preds.append(predict_section(by_id[row.section_id], merged, provider).label)
        golds.append(gold[row.section_id])
    return weighted_metrics(preds, golds, labels=LABELS)


def _dedup(values: Sequence) -> list:
    out = []
    for v in values:
        if v not in out:
            out.append(v)
    return out


def sweep(
    grid: Mapping[str, Sequence],
    fixture: SweepFixture,
    refit: Callable[[PipelineConfig], TopicModel] | None = None,
) -> SweepTable:
    """Run the one-at-a-time protocol over `grid`.

    Thresholds parameters reuse the fixture's fitted model; PipelineConfig
    parameters need `refit` to produce a model for the altered config. Rows
    are merged by config key and sorted by descending F1, failed rows last.
    """
    if not grid:
        raise ValueError("grid must name at least one hyperparameter")
    for param in grid:
        if param not in _THRESHOLD_FIELDS and param not in _PIPELINE_FIELDS:
            raise ValueError(f"unknown hyperparameter {param!r}")
        if param in _PIPELINE_FIELDS and refit is None:
            raise ValueError(f"sweeping {param!r} requires a refit callback")

    by_key: dict[str, SweepRow] = {}
    fitted: dict[PipelineConfig, TopicModel] = {fixture.model.config: fixture.model}
    for param in sorted(grid):
        for value in _dedup(grid[param]):
            row = _run_row(param, value, fixture, refit, fitted)
            by_key[row.config_key] = row

    def order(row: SweepRow):
        return (0, -row.weighted_f1, row.config_key) if row.ok else (1, 0.0, row.config_key)

    return SweepTable(rows=tuple(sorted(by_key.values(), key=order)))


def _run_row(
    param: str,
    value,
    fixture: SweepFixture,
    refit: Callable[[PipelineConfig], TopicModel] | None,
    fitted: dict[PipelineConfig, TopicModel],
) -> SweepRow:
    try:
        if param in _THRESHOLD_FIELDS:
            model = fixture.model
            thresholds = replace(fixture.thresholds, **{param: value})
        else:
            config = replace(fixture.model.config, **{param: value})
            if config not in fitted:
                fitted[config] = refit(config)
            model = fitted[config]
            thresholds = fixture.thresholds
        report = evaluate_map(
            model, fixture.tois, fixture.provider, thresholds, fixture.sections, fixture.groundtruth
        )
    except Exception as exc:
        return SweepRow(param=param, value=value, weighted_f1=None, error=f"{type(exc).__name__}: {exc}")
    return SweepRow(
        param=param,
        value=value,
        weighted_f1=report.weighted_f1,
        weighted_precision=report.weighted_precision,
        weighted_recall=report.weighted_recall,
    )
