"""Embedding provider contract and vector helpers."""

from __future__ import annotations

import warnings
from typing import Optional, Protocol, Sequence, runtime_checkable

import numpy as np

# Encoder that won the model comparison; alternates are configurable.
DEFAULT_MODEL_ID = "all-MiniLM-L6-v2"
ALTERNATE_MODEL_IDS = ("all-MiniLM-L12-v2", "all-mpnet-base-v2")


class DegenerateVectorWarning(UserWarning):
    """Raised (as a warning) when vector math hits a zero vector."""


@runtime_checkable
class EmbeddingProvider(Protocol):
    """Uniform contract for anything that turns texts into vectors.

    Implementations must be deterministic for a fixed ``model_id`` and
    return one finite ``dim``-length vector per input text, in order.
    """

    model_id: str
    dim: int

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        """Return an array of shape ``(len(texts), dim)``, float64."""
        ...


def quantize_f32(vectors: np.ndarray) -> np.ndarray:
    """Round values through float32 and upcast back to float64.

    Provider outputs pass through this so the float32 on-disk embedding
    block round-trips bit-exactly.
    """
    return np.asarray(vectors, dtype=np.float32).astype(np.float64)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity in [-1, 1]; zero vectors map to 0 with a warning."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        warnings.warn("cosine of a zero vector is defined as 0", DegenerateVectorWarning)
        return 0.0
    sim = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, sim))


def mean_vector(
    vectors: Sequence[np.ndarray] | np.ndarray,
    weights: Optional[Sequence[float]] = None,
) -> np.ndarray:
    """Arithmetic or weighted mean of vectors.

    Weighted mean is sum(w_i * v_i) / sum(w_i); weights must be non-negative
    and not all zero.
    """
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("mean_vector requires a non-empty list of vectors")
    if weights is None:
        return arr.mean(axis=0)
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (arr.shape[0],):
        raise ValueError("weights length must match number of vectors")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    total = float(w.sum())
    if total == 0.0:
        raise ValueError("weights must not all be zero")
    return (w[:, None] * arr).sum(axis=0) / total
