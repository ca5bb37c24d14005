"""Seed-guided nudging of sentence embeddings."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from docadopt.corpus.tokenize import word_tokens
from docadopt.embed.base import EmbeddingProvider, cosine, mean_vector
from docadopt.topics.config import PipelineConfig

DEFAULT_SEED_MIN_SIMILARITY = 0.1


@dataclass(frozen=True)
class SeedTopicSet:
    """Named seed phrase lists, one list per intended theme."""

    lists: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized = {}
        for name, phrases in self.lists.items():
            phrases = tuple(phrases)
            if not name:
                raise ValueError("seed list names must be non-empty")
            if not phrases or any(not p.strip() for p in phrases):
                raise ValueError(f"seed list {name!r} must contain non-empty phrases")
            normalized[name] = phrases
        object.__setattr__(self, "lists", normalized)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.lists)

    def __len__(self) -> int:
        return len(self.lists)

    def terms(self) -> frozenset[str]:
        """Vocabulary terms the seed upweights: each phrase's word tokens
        plus the token-joined phrase itself (for n-gram vocabularies)."""
        out: set[str] = set()
        for phrases in self.lists.values():
            for phrase in phrases:
                tokens = word_tokens(phrase)
                out.update(tokens)
                if len(tokens) > 1:
                    out.add(" ".join(tokens))
        return frozenset(out)


def seed_embeddings(seed: SeedTopicSet, provider: EmbeddingProvider) -> dict[str, np.ndarray]:
    """One embedding per seed list: the mean of its phrase embeddings."""
    out = {}
    for name, phrases in seed.lists.items():
        vectors = provider.embed(list(phrases))
        out[name] = mean_vector(list(vectors))
    return out


def apply_seed(
    sentence_embeddings: np.ndarray,
    seed: SeedTopicSet,
    provider: EmbeddingProvider,
    config: PipelineConfig | None = None,
    seed_min_similarity: float = DEFAULT_SEED_MIN_SIMILARITY,
) -> tuple[np.ndarray, frozenset[str]]:
    """Nudge sentences toward their best-matching seed list.

    A sentence moves to the mean of itself and the best seed embedding
    when that seed's cosine strictly exceeds every other seed's and
    clears seed_min_similarity. Returns the nudged matrix (a copy) and
    the seed term set for c-TF-IDF upweighting.
    """
    del config  # reserved for future nudge variants
    if not len(seed):
        raise ValueError("seed must contain at least one list")
    vectors = np.array(sentence_embeddings, dtype=np.float64, copy=True)
    seeds = seed_embeddings(seed, provider)
    names = list(seeds)
    for i in range(vectors.shape[0]):
        sims = [cosine(vectors[i], seeds[name]) for name in names]
        best = int(np.argmax(sims))
        best_sim = sims[best]
        if best_sim < seed_min_similarity:
            continue
        if any(j != best and sims[j] >= best_sim for j in range(len(sims))):
            continue  # no strict winner, leave the sentence alone
        vectors[i] = mean_vector([vectors[i], seeds[names[best]]])
    return vectors, seed.terms()
