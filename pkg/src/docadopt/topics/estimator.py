"""Estimator-style front end over the functional fit pipeline."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from docadopt.embed.base import EmbeddingProvider
from docadopt.ingest.records import Sentence
from docadopt.topics.clusterers import Clusterer, HdbscanClusterer
from docadopt.topics.config import PipelineConfig
from docadopt.topics.model import TopicModel, fit as fit_model
from docadopt.topics.reducers import PcaReducer, Reducer
from docadopt.topics.seeding import SeedTopicSet


class GuidedTopicModel:
    """Guided topic model with a fit/transform surface.

    Parameters mirror the functional pipeline; after fit the fitted
    artifact is available as model_ and per-sentence topic ids as
    labels_.
    """

    def __init__(
        self,
        provider: EmbeddingProvider,
        reducer: Reducer | None = None,
        clusterer: Clusterer | None = None,
        seed: SeedTopicSet | None = None,
        config: PipelineConfig | None = None,
    ):
        self.provider = provider
        self.reducer = reducer
        self.clusterer = clusterer
        self.seed = seed
        self.config = config

    def get_params(self, deep: bool = True) -> dict:
        del deep
        return {
            "provider": self.provider,
            "reducer": self.reducer,
            "clusterer": self.clusterer,
            "seed": self.seed,
            "config": self.config,
        }

    def set_params(self, **params) -> "GuidedTopicModel":
        for key, value in params.items():
            if key not in self.get_params():
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, sentences: Sequence[Sentence]) -> "GuidedTopicModel":
        self.model_ = fit_model(
            sentences,
            provider=self.provider,
            reducer=self.reducer if self.reducer is not None else PcaReducer(),
            clusterer=self.clusterer if self.clusterer is not None else HdbscanClusterer(),
            seed=self.seed,
            config=self.config,
        )
        assignments = self.model_.assignments
        self.labels_ = np.array(
            [assignments[s.sentence_id] for s in self.model_.sentences], dtype=np.int64
        )
        return self

    def fit_transform(self, sentences: Sequence[Sentence]) -> np.ndarray:
        return self.fit(sentences).labels_

    def _check_fitted(self) -> TopicModel:
        model = getattr(self, "model_", None)
        if model is None:
            raise RuntimeError("this GuidedTopicModel instance is not fitted yet")
        return model

    def save(self, path) -> None:
        """Persist the fitted model directory."""
        self._check_fitted().save(path)
