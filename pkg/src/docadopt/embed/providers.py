"""Embedding provider implementations.

``HashingProvider`` is the deterministic test provider: a bag-of-token hash
projection whose cosine structure tracks token overlap, so synthetic-corpus
tests have a meaningful similarity signal without a trained model.
"""

from __future__ import annotations

import hashlib
import logging
import re
import warnings
from typing import Optional, Sequence

import numpy as np

from docadopt.embed.base import DEFAULT_MODEL_ID, quantize_f32

logger = logging.getLogger(__name__)

_WORD_RE = re.compile(r"\w+", re.UNICODE)


class HashingProvider:
    """Deterministic bag-of-token hash projection.

    Each token maps to a fixed pseudo-random unit vector derived from
    sha256(seed, token); a text embeds as the sum of its token vectors.
    Pure function of (text, seed): two processes produce bit-identical
    vectors. Texts sharing tokens get correlated vectors, disjoint-token
    texts are near-orthogonal.
    """

    def __init__(self, dim: int = 64, seed: int = 0, max_tokens: int = 512):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim
        self.seed = seed
        self.max_tokens = max_tokens
        self.model_id = f"hash-d{dim}-s{seed}"
        self._token_cache: dict[str, np.ndarray] = {}

    def _token_vector(self, token: str) -> np.ndarray:
        vec = self._token_cache.get(token)
        if vec is None:
            digest = hashlib.sha256(f"{self.seed}:{token}".encode("utf-8")).digest()
            rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
            raw = rng.standard_normal(self.dim)
            vec = quantize_f32(raw / np.linalg.norm(raw))
            self._token_cache[token] = vec
        return vec

    def embed_one(self, text: str) -> np.ndarray:
        tokens = _WORD_RE.findall(text.lower())
        if len(tokens) > self.max_tokens:
            warnings.warn(
                f"text of {len(tokens)} tokens truncated to {self.max_tokens}",
                UserWarning,
            )
            tokens = tokens[: self.max_tokens]
        out = np.zeros(self.dim, dtype=np.float64)
        for tok in tokens:
            out += self._token_vector(tok)
        return quantize_f32(out)

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        return np.vstack([self.embed_one(t) for t in texts]) if texts else np.zeros((0, self.dim))


class SentenceTransformerProvider:
    """Production provider backed by a pretrained sentence encoder.

    Imported lazily so the rest of the package works without the optional
    ``sbert`` extra installed.
    """

    def __init__(self, model_id: str = DEFAULT_MODEL_ID, device: Optional[str] = None):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:  # pragma: no cover - environment dependent
            raise ImportError(
                "sentence-transformers is required for SentenceTransformerProvider; "
                "install the 'sbert' extra"
            ) from exc
        self.model_id = model_id
        self._model = SentenceTransformer(model_id, device=device)
        self.dim = int(self._model.get_sentence_embedding_dimension())
        self._max_seq_length = int(getattr(self._model, "max_seq_length", 256))

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        for text in texts:
            if len(text.split()) > self._max_seq_length:
                warnings.warn(
                    f"text of ~{len(text.split())} words exceeds the encoder window "
                    f"({self._max_seq_length}); it will be truncated",
                    UserWarning,
                )
        vectors = self._model.encode(
            list(texts), convert_to_numpy=True, show_progress_bar=False
        )
        return quantize_f32(np.asarray(vectors))


class RemoteEmbeddingClient:
    """Client for the one-endpoint JSON embedding protocol.

    Request body ``{"model_id": ..., "texts": [...]}``; response body
    ``{"vectors": [[...], ...]}``.
    """

    def __init__(self, url: str, model_id: str, dim: int, timeout: float = 30.0, transport=None):
        import httpx

        self.url = url
        self.model_id = model_id
        self.dim = dim
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim))
        resp = self._client.post(self.url, json={"model_id": self.model_id, "texts": list(texts)})
        resp.raise_for_status()
        vectors = resp.json()["vectors"]
        arr = quantize_f32(np.asarray(vectors, dtype=np.float64))
        if arr.shape != (len(texts), self.dim):
            raise ValueError(
                f"remote embedding shape {arr.shape} does not match "
                f"({len(texts)}, {self.dim})"
            )
        return arr


_HASH_ID_RE = re.compile(r"^hash-d(\d+)-s(\d+)$")


def provider_from_model_id(model_id: str):
    """Reconstruct the provider a stored model was fitted with.

    Hashing ids round-trip exactly; anything else is treated as a
    sentence-transformers model name.
    """
    m = _HASH_ID_RE.match(model_id)
    if m:
        return HashingProvider(dim=int(m.group(1)), seed=int(m.group(2)))
    return SentenceTransformerProvider(model_id)
