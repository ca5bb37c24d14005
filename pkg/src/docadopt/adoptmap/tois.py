"""Topics of Interest: the five prediction labels and their thresholds."""
from __future__ import annotations

from dataclasses import dataclass

from docadopt.config import load_toi_config
from docadopt.topics.seeding import SeedTopicSet

TOI_NAMES = ("License", "Functional Suitability", "Compatibility", "Project's Maintenance")
OUTLIER_LABEL = "Outlier"
# Declaration order for tie-breaks: an all-zero similarity tie must fall
# to Outlier, so it is declared first.
LABELS = (OUTLIER_LABEL,) + TOI_NAMES


@dataclass(frozen=True)
class ToiSpec:
    """One Topic of Interest and the phrases that find its topics."""

    name: str
    phrases: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.name not in TOI_NAMES:
            raise ValueError(f"TOI name must be one of {TOI_NAMES}, got {self.name!r}")
        phrases = tuple(self.phrases)
        if not phrases or any(not p.strip() for p in phrases):
            raise ValueError(f"TOI {self.name!r} needs non-empty phrases")
        object.__setattr__(self, "phrases", phrases)

    @property
    def search_string(self) -> str:
        return " ".join(self.phrases)


@dataclass(frozen=True)
class Thresholds:
    topics_similarity: float = 0.3
    reduction_min_similarity: float = 0.2
    topic_representation_size: int = 20

    def __post_init__(self) -> None:
        if not (0.0 <= self.topics_similarity <= 1.0):
            raise ValueError(
                f"topics_similarity must be in [0, 1], got {self.topics_similarity}"
            )
        if not (0.0 <= self.reduction_min_similarity <= 1.0):
            raise ValueError(
                f"reduction_min_similarity must be in [0, 1], "
                f"got {self.reduction_min_similarity}"
            )
        if self.topic_representation_size < 1:
            raise ValueError(
                f"topic_representation_size must be >= 1, "
                f"got {self.topic_representation_size}"
            )

    def to_dict(self) -> dict:
        return {
            "topics_similarity": self.topics_similarity,
            "reduction_min_similarity": self.reduction_min_similarity,
            "topic_representation_size": self.topic_representation_size,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Thresholds":
        extra = set(data) - set(cls.__dataclass_fields__)
        if extra:
            raise ValueError(f"unknown Thresholds fields: {sorted(extra)}")
        return cls(**data)


def default_tois() -> tuple[ToiSpec, ...]:
    """The packaged TOI specs, in declaration order."""
    by_name = {}
    for raw in load_toi_config():
        spec = ToiSpec(name=raw["name"], phrases=tuple(raw["phrases"]))
        if spec.name in by_name:
            raise ValueError(f"duplicate TOI {spec.name!r} in config")
        by_name[spec.name] = spec
    missing = [n for n in TOI_NAMES if n not in by_name]
    if missing:
        raise ValueError(f"TOI config is missing {missing}")
    return tuple(by_name[n] for n in TOI_NAMES)


def seed_from_tois(tois: tuple[ToiSpec, ...] | None = None) -> SeedTopicSet:
    """Seed topic set guiding fit toward the TOIs."""
    tois = tois or default_tois()
    return SeedTopicSet(lists={t.name: t.phrases for t in tois})
