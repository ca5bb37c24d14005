"""Disk cache for embeddings, keyed by (model_id, text hash).

Layout: ``<cache_dir>/<model_id slug>/<hash[:2]>/<hash>.npy`` — one float32
vector per file. Writes go through a temp file plus atomic rename (single
writer); reads need no locking.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from docadopt.embed.base import quantize_f32


def _slug(model_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", model_id)


class CachingProvider:
    """Wraps any provider with a persistent on-disk vector cache."""

    def __init__(self, provider, cache_dir: str | Path):
        self.provider = provider
        self.model_id = provider.model_id
        self.dim = provider.dim
        self.cache_dir = Path(cache_dir) / _slug(provider.model_id)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _path_for(self, text: str) -> Path:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return self.cache_dir / digest[:2] / f"{digest}.npy"

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        missing: list[int] = []
        for i, text in enumerate(texts):
            path = self._path_for(text)
            if path.exists():
                out[i] = np.load(path).astype(np.float64)
            else:
                missing.append(i)
        if missing:
            fresh = self.provider.embed([texts[i] for i in missing])
            for j, i in enumerate(missing):
                out[i] = fresh[j]
                self._store(self._path_for(texts[i]), fresh[j])
        return quantize_f32(out)

    def _store(self, path: Path, vector: np.ndarray) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                np.save(fh, vector.astype(np.float32))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
