"""Hand-labeled groundtruth loading with the annotator-disagreement rule."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..adoptmap.tois import LABELS, OUTLIER_LABEL

GROUNDTRUTH_COLUMNS = ("section_id", "label_a", "label_b", "gold")


class GroundtruthError(ValueError):
    """The groundtruth file is malformed or internally inconsistent."""


@dataclass(frozen=True)
class LabeledSection:
    """A section with its adjudicated gold label.

    When both annotator labels are present and disagree, the gold label is
    Outlier: disagreement means the section did not clearly express any
    single criterion.
    """

    section_id: str
    gold_label: str
    annotator_labels: tuple[str, str] | None = None

    def __post_init__(self):
        if not self.section_id:
            raise GroundtruthError("section_id must be non-empty")
        if self.annotator_labels is not None:
            a, b = self.annotator_labels
            if a != b and self.gold_label != OUTLIER_LABEL:
                raise GroundtruthError(
                    f"{self.section_id}: disagreeing annotators must yield gold {OUTLIER_LABEL!r}"
                )
            if a == b and self.gold_label != a:
                raise GroundtruthError(
                    f"{self.section_id}: agreeing annotators must yield their shared label"
                )


def _checked_label(value: str, valid: Sequence[str], row_id: str, column: str) -> str:
    if value not in valid:
        raise GroundtruthError(f"{row_id}: {column} {value!r} is not one of {tuple(valid)}")
    return value


def load_groundtruth(
    path: str | Path, valid_labels: Sequence[str] = LABELS
) -> tuple[LabeledSection, ...]:
    """Read a groundtruth CSV (columns section_id, label_a, label_b, gold).

    Rows either carry both annotator labels (gold, if filled in, must match
    the adjudication rule) or neither, in which case gold alone is used.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise GroundtruthError(f"{path}: empty file")
        if tuple(reader.fieldnames) != GROUNDTRUTH_COLUMNS:
            raise GroundtruthError(
                f"{path}: expected columns {GROUNDTRUTH_COLUMNS}, got {tuple(reader.fieldnames)}"
            )
        rows = []
        seen: set[str] = set()
        for lineno, raw in enumerate(reader, start=2):
            section_id = (raw["section_id"] or "").strip()
            if not section_id:
                raise GroundtruthError(f"{path}:{lineno}: missing section_id")
            if section_id in seen:
                raise GroundtruthError(f"{path}:{lineno}: duplicate section_id {section_id!r}")
            seen.add(section_id)
            label_a = (raw["label_a"] or "").strip()
            label_b = (raw["label_b"] or "").strip()
            gold = (raw["gold"] or "").strip()
            if bool(label_a) != bool(label_b):
                raise GroundtruthError(
                    f"{path}:{lineno}: annotator labels must come as a pair or not at all"
                )
            if label_a:
                _checked_label(label_a, valid_labels, section_id, "label_a")
                _checked_label(label_b, valid_labels, section_id, "label_b")
                derived = label_a if label_a == label_b else OUTLIER_LABEL
                if gold and gold != derived:
                    raise GroundtruthError(
                        f"{path}:{lineno}: gold {gold!r} contradicts annotator pair "
                        f"({label_a!r}, {label_b!r}) which adjudicates to {derived!r}"
                    )
                rows.append(
                    LabeledSection(section_id, derived, annotator_labels=(label_a, label_b))
                )
            else:
                if not gold:
                    raise GroundtruthError(f"{path}:{lineno}: row has neither annotators nor gold")
                _checked_label(gold, valid_labels, section_id, "gold")
                rows.append(LabeledSection(section_id, gold))
    if not rows:
        raise GroundtruthError(f"{path}: no groundtruth rows")
    return tuple(rows)


def gold_map(rows: Sequence[LabeledSection]) -> dict[str, str]:
    return {r.section_id: r.gold_label for r in rows}
