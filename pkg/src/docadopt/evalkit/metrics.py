"""Support-weighted precision/recall/F1 with a gold-row confusion matrix."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class ClassMetrics:
    label: str
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    labels: tuple[str, ...]
    per_class: tuple[ClassMetrics, ...]
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    confusion: tuple[tuple[int, ...], ...]
    n: int

    def class_metrics(self, label: str) -> ClassMetrics:
        for cm in self.per_class:
            if cm.label == label:
                return cm
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "per_class": [
                {
                    "label": cm.label,
                    "precision": cm.precision,
                    "recall": cm.recall,
                    "f1": cm.f1,
                    "support": cm.support,
                }
                for cm in self.per_class
            ],
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
            "confusion": [list(row) for row in self.confusion],
            "n": self.n,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=2)

    def format_table(self) -> str:
        width = max([len("label")] + [len(l) for l in self.labels])
        lines = [f"{'label':<{width}}  precision  recall     f1         support"]
        for cm in self.per_class:
            lines.append(
                f"{cm.label:<{width}}  {cm.precision:<9.4f}  {cm.recall:<9.4f}  "
                f"{cm.f1:<9.4f}  {cm.support}"
            )
        lines.append(
            f"{'weighted':<{width}}  {self.weighted_precision:<9.4f}  "
            f"{self.weighted_recall:<9.4f}  {self.weighted_f1:<9.4f}  {self.n}"
        )
        return "\n".join(lines)


def weighted_metrics(
    preds: Sequence[str], gold: Sequence[str], labels: Sequence[str] | None = None
) -> MetricsReport:
    """Per-class precision/recall/F1 plus support-weighted averages.

    Confusion matrix rows follow gold labels, columns predictions, both in
    `labels` order (default: sorted union of observed labels). Zero
    denominators yield 0.0 by convention.
    """
    if len(preds) != len(gold):
        raise ValueError(f"length mismatch: {len(preds)} predictions vs {len(gold)} gold labels")
    if not gold:
        raise ValueError("need at least one labeled example")
    observed = set(preds) | set(gold)
    if labels is None:
        label_order = tuple(sorted(observed))
    else:
        label_order = tuple(labels)
        if len(set(label_order)) != len(label_order):
            raise ValueError("labels must be unique")
        missing = observed - set(label_order)
        if missing:
            raise ValueError(f"observed labels not covered by labels argument: {sorted(missing)}")

    pos = {label: i for i, label in enumerate(label_order)}
    k = len(label_order)
    confusion = [[0] * k for _ in range(k)]
    for p, g in zip(preds, gold):
        confusion[pos[g]][pos[p]] += 1

    per_class = []
    w_p = w_r = w_f1 = 0.0
    for i, label in enumerate(label_order):
        tp = confusion[i][i]
        support = sum(confusion[i])
        predicted = sum(confusion[r][i] for r in range(k))
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class.append(ClassMetrics(label, precision, recall, f1, support))
        w_p += support * precision
        w_r += support * recall
        w_f1 += support * f1

    n = len(gold)
    return MetricsReport(
        labels=label_order,
        per_class=tuple(per_class),
        weighted_precision=w_p / n,
        weighted_recall=w_r / n,
        weighted_f1=w_f1 / n,
        confusion=tuple(tuple(row) for row in confusion),
        n=n,
    )
