"""Topic pipeline configuration."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PipelineConfig:
    """Hyperparameters of the guided topic pipeline.

    Defaults are the tuned operating point: reduction to 20 components
    over 20 neighbors at min_dist 0.1, clusters of at least 50 sentences,
    unigram vocabulary with stop words removed and sqrt frequency
    reduction, seed terms upweighted by 1.2, and representations refined
    by MMR then KBI.
    """

    n_neighbors: int = 20
    n_components: int = 20
    min_dist: float = 0.1
    min_cluster_size: int = 50
    ngram_len: int = 1
    stopwords_enabled: bool = True
    reduce_frequent_words: bool = True
    seed_multiplier: float = 1.2
    representation_chain: tuple[str, ...] = ("mmr", "kbi")
    mmr_lambda: float = 0.7

    def __post_init__(self) -> None:
        if not (2 <= self.n_neighbors <= 100):
            raise ValueError(f"n_neighbors must be in [2, 100], got {self.n_neighbors}")
        if self.n_components < 2:
            raise ValueError(f"n_components must be >= 2, got {self.n_components}")
        if not (0.0 <= self.min_dist <= 1.0):
            raise ValueError(f"min_dist must be in [0, 1], got {self.min_dist}")
        if self.min_cluster_size < 2:
            raise ValueError(f"min_cluster_size must be >= 2, got {self.min_cluster_size}")
        if self.ngram_len < 1:
            raise ValueError(f"ngram_len must be >= 1, got {self.ngram_len}")
        if self.seed_multiplier <= 0:
            raise ValueError(f"seed_multiplier must be > 0, got {self.seed_multiplier}")
        if not (0.0 <= self.mmr_lambda <= 1.0):
            raise ValueError(f"mmr_lambda must be in [0, 1], got {self.mmr_lambda}")
        # normalize lists passed in by callers or loaded from JSON
        object.__setattr__(
            self, "representation_chain", tuple(s.lower() for s in self.representation_chain)
        )
        unknown = set(self.representation_chain) - {"mmr", "kbi"}
        if unknown:
            raise ValueError(f"unknown representation steps: {sorted(unknown)}")

    def to_dict(self) -> dict:
        return {
            "n_neighbors": self.n_neighbors,
            "n_components": self.n_components,
            "min_dist": self.min_dist,
            "min_cluster_size": self.min_cluster_size,
            "ngram_len": self.ngram_len,
            "stopwords_enabled": self.stopwords_enabled,
            "reduce_frequent_words": self.reduce_frequent_words,
            "seed_multiplier": self.seed_multiplier,
            "representation_chain": list(self.representation_chain),
            "mmr_lambda": self.mmr_lambda,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        extra = set(data) - set(cls.__dataclass_fields__)
        if extra:
            raise ValueError(f"unknown PipelineConfig fields: {sorted(extra)}")
        if "representation_chain" in known:
            known["representation_chain"] = tuple(known["representation_chain"])
        return cls(**known)
