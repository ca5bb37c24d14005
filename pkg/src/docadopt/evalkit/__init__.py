"""Evaluation harness: groundtruth, weighted metrics, hyperparameter sweep."""
from .groundtruth import (
    GROUNDTRUTH_COLUMNS,
    GroundtruthError,
    LabeledSection,
    gold_map,
    load_groundtruth,
)
from .metrics import ClassMetrics, MetricsReport, weighted_metrics
from .sweep import SweepFixture, SweepRow, SweepTable, evaluate_map, sweep

__all__ = [
    "GROUNDTRUTH_COLUMNS",
    "GroundtruthError",
    "LabeledSection",
    "gold_map",
    "load_groundtruth",
    "ClassMetrics",
    "MetricsReport",
    "weighted_metrics",
    "SweepFixture",
    "SweepRow",
    "SweepTable",
    "evaluate_map",
    "sweep",
]
