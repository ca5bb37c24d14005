"""Topic representation refinement: MMR diversification, KBI re-ranking."""
from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from docadopt.corpus.tokenize import TokenizerConfig, tokenize
from docadopt.embed.base import EmbeddingProvider, cosine, mean_vector

DEFAULT_N_REPR_DOCS = 5
DEFAULT_CANDIDATE_POOL_SIZE = 30


def mmr(
    candidate_terms: Sequence[tuple[str, float]],
    term_embeddings: Mapping[str, np.ndarray],
    topic_embedding: np.ndarray | None,
    lam: float,
    k: int,
) -> list[tuple[str, float]]:
    """Greedy maximal-marginal-relevance selection of k terms.

    The relevance supplied with each candidate is its similarity to the
    topic; candidates missing a relevance (None) fall back to cosine
    against topic_embedding. Each step picks the term maximizing
    lam * relevance - (1 - lam) * max similarity to the already selected,
    so the first pick is the most relevant term and lam=1 reduces to
    top-k by relevance. Ties break toward earlier candidate order.
    """
    if not (0.0 <= lam <= 1.0):
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    if k > len(candidate_terms):
        raise ValueError(f"k={k} exceeds {len(candidate_terms)} candidates")
    if k < 1 or not candidate_terms:
        return []

    terms = [t for t, _ in candidate_terms]
    relevance = np.empty(len(terms))
    for i, (term, rel) in enumerate(candidate_terms):
        if rel is None:
            if topic_embedding is None:
                raise ValueError(f"candidate {term!r} has no relevance and no topic embedding given")
            relevance[i] = cosine(term_embeddings[term], topic_embedding)
        else:
            relevance[i] = rel

    sim = np.eye(len(terms))
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            sim[i, j] = sim[j, i] = cosine(term_embeddings[terms[i]], term_embeddings[terms[j]])

    selected: list[int] = [int(np.argmax(relevance))]
    remaining = [i for i in range(len(terms)) if i != selected[0]]
    while len(selected) < k:
        scores = [
            lam * relevance[i] - (1.0 - lam) * max(sim[i, j] for j in selected)
            for i in remaining
        ]
        pick = remaining[int(np.argmax(scores))]
        selected.append(pick)
        remaining.remove(pick)
    return [(terms[i], float(relevance[i])) for i in selected]


def representative_texts(
    member_texts: Sequence[str],
    term_weights: Mapping[str, float],
    n_repr_docs: int = DEFAULT_N_REPR_DOCS,
    tokenizer: TokenizerConfig | None = None,
) -> list[str]:
    """The n_repr_docs member sentences with the highest summed term weight."""
    cfg = tokenizer or TokenizerConfig()
    scored = []
    for pos, text in enumerate(member_texts):
        total = sum(term_weights.get(t, 0.0) for t in tokenize(text, cfg))
        scored.append((-total, pos))
    scored.sort()
    return [member_texts[pos] for _, pos in scored[:n_repr_docs]]


def kbi(
    member_texts: Sequence[str],
    term_weights: Mapping[str, float],
    provider: EmbeddingProvider,
    n_repr_docs: int = DEFAULT_N_REPR_DOCS,
    candidate_pool_size: int = DEFAULT_CANDIDATE_POOL_SIZE,
    candidates: Sequence[tuple[str, float]] | None = None,
    tokenizer: TokenizerConfig | None = None,
) -> list[tuple[str, float]]:
    """KeyBERT-inspired re-ranking of a topic's candidate terms.

    Representative sentences are the top n_repr_docs members by summed
    c-TF-IDF weight of their terms; candidates default to the topic's top
    candidate_pool_size terms by weight, or, when chained after another
    step, the terms that step selected. Output is the candidates ordered
    by cosine between their embedding and the mean representative-sentence
    embedding, ties toward prior order.
    """
    if not member_texts:
        raise ValueError("topic has no member sentences")
    if candidates is None:
        pool = sorted(term_weights.items(), key=lambda tw: (-tw[1], tw[0]))
        candidates = [(t, w) for t, w in pool[:candidate_pool_size] if w > 0]
    if not candidates:
        return []
    reps = representative_texts(member_texts, term_weights, n_repr_docs, tokenizer)
    rep_center = mean_vector(list(provider.embed(reps)))
    term_vectors = provider.embed([t for t, _ in candidates])
    ranked = sorted(
        (
            (-cosine(term_vectors[i], rep_center), i)
            for i in range(len(candidates))
        ),
    )
    return [(candidates[i][0], -neg) for neg, i in ranked]
