"""Dimensionality reducer contract and implementations."""
from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np

from docadopt.topics.config import PipelineConfig


@runtime_checkable
class Reducer(Protocol):
    def reduce(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray: ...


def _check_dims(vectors: np.ndarray, n_components: int) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError(f"vectors must be 2-dimensional, got shape {vectors.shape}")
    if n_components > vectors.shape[1]:
        raise ValueError(
            f"n_components={n_components} exceeds input dimension {vectors.shape[1]}"
        )
    return vectors


class TruncateReducer:
    """Keeps the first n_components coordinates. Deterministic; the
    identity when n_components equals the input dimension. Test-grade."""

    def reduce(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray:
        vectors = _check_dims(vectors, config.n_components)
        return vectors[:, : config.n_components].copy()


class PcaReducer:
    """Linear projection onto the top principal components.

    Fulfills the reducer contract with a deterministic solver; the
    manifold parameters (n_neighbors, min_dist) do not apply to a linear
    projection and are ignored.
    """

    def __init__(self, random_state: int = 0):
        self.random_state = random_state

    def reduce(self, vectors: np.ndarray, config: PipelineConfig) -> np.ndarray:
        from sklearn.decomposition import PCA

        vectors = _check_dims(vectors, config.n_components)
        if vectors.shape[0] < config.n_components:
            raise ValueError(
                f"PCA needs at least n_components={config.n_components} samples, "
                f"got {vectors.shape[0]}"
            )
        pca = PCA(
            n_components=config.n_components,
            svd_solver="full",
            random_state=self.random_state,
        )
        return pca.fit_transform(vectors)
