"""Embedding providers and shared vector math.

All downstream stages (topic fitting, merging, prediction) depend only on
the :class:`EmbeddingProvider` contract, so the production sentence encoder,
the remote client, and the deterministic hashing provider used in tests are
interchangeable.
"""

from docadopt.embed.base import (
    DEFAULT_MODEL_ID,
    DegenerateVectorWarning,
    EmbeddingProvider,
    cosine,
    mean_vector,
    quantize_f32,
)
from docadopt.embed.providers import (
    HashingProvider,
    RemoteEmbeddingClient,
    SentenceTransformerProvider,
    provider_from_model_id,
)
from docadopt.embed.cache import CachingProvider

__all__ = [
    "DEFAULT_MODEL_ID",
    "DegenerateVectorWarning",
    "EmbeddingProvider",
    "cosine",
    "mean_vector",
    "quantize_f32",
    "HashingProvider",
    "SentenceTransformerProvider",
    "RemoteEmbeddingClient",
    "CachingProvider",
    "provider_from_model_id",
]
