"""Estimator-style front end over the merge-and-predict pipeline."""
from __future__ import annotations

from typing import Sequence

from docadopt.adoptmap.merge import MergedTopicModel, build_adoption_map
from docadopt.adoptmap.predict import SectionPrediction, predict_section
from docadopt.adoptmap.tois import Thresholds, ToiSpec, default_tois
from docadopt.embed.base import EmbeddingProvider
from docadopt.ingest.records import Section
from docadopt.topics.model import TopicModel


class AdoptionMapper:
    """Maps fitted topics to adoption criteria and predicts section labels.

    fit consumes a fitted TopicModel and produces merged_; predict labels
    sections through the merged model.
    """

    def __init__(
        self,
        provider: EmbeddingProvider,
        tois: tuple[ToiSpec, ...] | None = None,
        thresholds: Thresholds | None = None,
    ):
        self.provider = provider
        self.tois = tois
        self.thresholds = thresholds

    def get_params(self, deep: bool = True) -> dict:
        del deep
        return {
            "provider": self.provider,
            "tois": self.tois,
            "thresholds": self.thresholds,
        }

    def set_params(self, **params) -> "AdoptionMapper":
        for key, value in params.items():
            if key not in self.get_params():
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, model: TopicModel) -> "AdoptionMapper":
        self.merged_ = build_adoption_map(
            model,
            tois=self.tois if self.tois is not None else default_tois(),
            provider=self.provider,
            thresholds=self.thresholds,
        )
        return self

    def _check_fitted(self) -> MergedTopicModel:
        merged = getattr(self, "merged_", None)
        if merged is None:
            raise RuntimeError("this AdoptionMapper instance is not fitted yet")
        return merged

    def predict(self, sections: Sequence[Section | str]) -> list[str]:
        merged = self._check_fitted()
        return [predict_section(s, merged, self.provider).label for s in sections]

    def predict_detailed(self, sections: Sequence[Section | str]) -> list[SectionPrediction]:
        merged = self._check_fitted()
        return [predict_section(s, merged, self.provider) for s in sections]
