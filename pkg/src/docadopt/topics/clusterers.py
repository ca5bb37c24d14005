"""Clusterer contract and implementations. Noise points get label -1;
every non-noise cluster has at least min_cluster_size members."""
from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np

from docadopt.topics.config import PipelineConfig


@runtime_checkable
class Clusterer(Protocol):
    def cluster(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray: ...


def _enforce_min_size(labels: np.ndarray, min_cluster_size: int) -> np.ndarray:
    """Relabel clusters smaller than min_cluster_size as noise."""
    labels = np.asarray(labels, dtype=np.int64).copy()
    for label in np.unique(labels):
        if label == -1:
            continue
        members = labels == label
        if int(members.sum()) < min_cluster_size:
            labels[members] = -1
    return labels


class HdbscanClusterer:
    """Hierarchical density clustering; the production choice."""

    def cluster(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray:
        from sklearn.cluster import HDBSCAN

        vectors = np.asarray(vectors, dtype=np.float64)
        model = HDBSCAN(min_cluster_size=config.min_cluster_size)
        labels = model.fit_predict(vectors)
        # guard: sklearn's HDBSCAN honors min_cluster_size already, but the
        # contract is enforced here rather than trusted
        return _enforce_min_size(labels, config.min_cluster_size)


class ThresholdClusterer:
    """Average-linkage agglomeration cut at a fixed cosine distance.

    Deterministic without any seed, which makes it the test-grade
    clusterer; small clusters are folded into noise to honor the
    min_cluster_size rule.
    """

    def __init__(self, distance_threshold: float = 0.5):
        if not (0.0 < distance_threshold <= 2.0):
            raise ValueError(f"distance_threshold must be in (0, 2], got {distance_threshold}")
        self.distance_threshold = distance_threshold

    def cluster(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray:
        from sklearn.cluster import AgglomerativeClustering

        vectors = np.asarray(vectors, dtype=np.float64)
        labels = np.full(vectors.shape[0], -1, dtype=np.int64)
        # zero vectors have no cosine direction; they stay noise
        nonzero = np.linalg.norm(vectors, axis=1) > 0
        if int(nonzero.sum()) >= 2:
            model = AgglomerativeClustering(
                n_clusters=None,
                distance_threshold=self.distance_threshold,
                metric="cosine",
                linkage="average",
            )
            labels[nonzero] = model.fit_predict(vectors[nonzero])
        return _enforce_min_size(labels, config.min_cluster_size)
