"""Guided topic model: fit pipeline, fitted artifact, serialization."""
from __future__ import annotations

import json
import struct
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from docadopt.corpus.tokenize import TokenizerConfig, tokenize
from docadopt.embed.base import EmbeddingProvider, mean_vector
from docadopt.ingest.records import Sentence
from docadopt.topics.clusterers import Clusterer
from docadopt.topics.config import PipelineConfig
from docadopt.topics.ctfidf import ctfidf
from docadopt.topics.reducers import Reducer
from docadopt.topics.representation import (
    DEFAULT_CANDIDATE_POOL_SIZE,
    kbi,
    mmr,
)
from docadopt.topics.seeding import SeedTopicSet, apply_seed

MODEL_FORMAT_VERSION = 1
DEFAULT_REPRESENTATION_SIZE = 20
_EMBEDDINGS_MAGIC = b"DAEM"


class ModelFormatError(ValueError):
    """The on-disk model is malformed or from an incompatible version."""


@dataclass(frozen=True, eq=False)
class Topic:
    """One fitted topic; topic_id -1 is the outlier bucket."""

    topic_id: int
    member_sentence_ids: tuple[str, ...]
    embedding: np.ndarray
    representation: tuple[tuple[str, float], ...]

    @property
    def size(self) -> int:
        return len(self.member_sentence_ids)

    def equals(self, other: "Topic") -> bool:
        return (
            self.topic_id == other.topic_id
            and self.member_sentence_ids == other.member_sentence_ids
            and np.array_equal(self.embedding, other.embedding)
            and self.representation == other.representation
        )


@dataclass(frozen=True, eq=False)
class TopicModel:
    """Immutable fitted model.

    term_counts and ctfidf_weights rows align with the topics tuple;
    embeddings rows align with the sentences tuple. Sentence embeddings
    are the provider's original vectors (seed nudging only shapes
    clustering), and every topic embedding is their member mean.
    """

    topics: tuple[Topic, ...]
    config: PipelineConfig
    model_id: str
    vocabulary: tuple[str, ...]
    term_counts: np.ndarray
    ctfidf_weights: np.ndarray
    sentences: tuple[Sentence, ...]
    embeddings: np.ndarray
    seed_terms: frozenset[str]

    def __post_init__(self) -> None:
        if self.term_counts.shape != (len(self.topics), len(self.vocabulary)):
            raise ValueError("term_counts shape does not match topics x vocabulary")
        if self.ctfidf_weights.shape != self.term_counts.shape:
            raise ValueError("ctfidf_weights shape does not match term_counts")
        if self.embeddings.shape[0] != len(self.sentences):
            raise ValueError("embeddings row count does not match sentences")

    @property
    def topic_ids(self) -> tuple[int, ...]:
        return tuple(t.topic_id for t in self.topics)

    def topic(self, topic_id: int) -> Topic:
        for t in self.topics:
            if t.topic_id == topic_id:
                return t
        raise KeyError(f"no topic with id {topic_id}")

    @property
    def assignments(self) -> dict[str, int]:
        """sentence_id -> topic_id; every fitted sentence appears exactly once."""
        out: dict[str, int] = {}
        for topic in self.topics:
            for sid in topic.member_sentence_ids:
                out[sid] = topic.topic_id
        return out

    def sentence_index(self) -> dict[str, int]:
        return {s.sentence_id: i for i, s in enumerate(self.sentences)}

    def tokenizer(self) -> TokenizerConfig:
        return TokenizerConfig(
            ngram_len=self.config.ngram_len,
            stopwords_enabled=self.config.stopwords_enabled,
        )

    def term_weights_of(self, topic_id: int) -> dict[str, float]:
        row = self.ctfidf_weights[self.topic_ids.index(topic_id)]
        return {
            term: float(row[i]) for i, term in enumerate(self.vocabulary) if row[i] != 0.0
        }

    def equals(self, other: "TopicModel") -> bool:
        return (
            self.config == other.config
            and self.model_id == other.model_id
            and self.vocabulary == other.vocabulary
            and self.seed_terms == other.seed_terms
            and self.sentences == other.sentences
            and np.array_equal(self.term_counts, other.term_counts)
            and np.array_equal(self.ctfidf_weights, other.ctfidf_weights)
            and np.array_equal(self.embeddings, other.embeddings)
            and len(self.topics) == len(other.topics)
            and all(a.equals(b) for a, b in zip(self.topics, other.topics))
        )

    def save(self, path: str | Path) -> None:
        save_model(self, path)

    @classmethod
    def load(cls, path: str | Path) -> "TopicModel":
        return load_model(path)


def _weights_from_counts(
    counts: np.ndarray,
    config: PipelineConfig,
    seed_terms: frozenset[str],
    vocabulary: Sequence[str],
) -> np.ndarray:
    """c-TF-IDF weights with the seed multiplier applied to final weights.

    Rows with no counts at all (topics whose members have no vocabulary
    tokens) get all-zero weights rather than failing the whole matrix.
    """
    weights = np.zeros(counts.shape, dtype=np.float64)
    valid = np.flatnonzero(counts.sum(axis=1) > 0)
    if valid.size:
        weights[valid] = ctfidf(counts[valid], config.reduce_frequent_words)
    if seed_terms:
        cols = [i for i, t in enumerate(vocabulary) if t in seed_terms]
        if cols:
            weights[:, cols] *= config.seed_multiplier
    return weights


def build_representation(
    term_weights: dict[str, float],
    member_texts: Sequence[str],
    provider: EmbeddingProvider,
    config: PipelineConfig,
    tokenizer: TokenizerConfig,
    size: int = DEFAULT_REPRESENTATION_SIZE,
) -> tuple[tuple[str, float], ...]:
    """Run the representation chain over a topic's top terms.

    Candidates start as the topic's top terms by c-TF-IDF weight; MMR
    sees relevance normalized by the top weight so it composes with
    cosine-scaled diversity, KBI re-ranks against representative
    sentences. The result is truncated to size.
    """
    pool = sorted(term_weights.items(), key=lambda tw: (-tw[1], tw[0]))
    pool = [(t, float(w)) for t, w in pool[:DEFAULT_CANDIDATE_POOL_SIZE] if w > 0]
    if not pool:
        return ()
    current: list[tuple[str, float]] = pool
    for step in config.representation_chain:
        if not current:
            break
        if step == "mmr":
            top = max(w for _, w in current)
            scaled = [(t, w / top if top > 0 else 0.0) for t, w in current]
            vectors = provider.embed([t for t, _ in scaled])
            term_vectors = {t: vectors[i] for i, (t, _) in enumerate(scaled)}
            k = min(size, len(scaled))
            current = mmr(scaled, term_vectors, None, config.mmr_lambda, k)
        else:  # "kbi", validated by PipelineConfig
            current = kbi(
                list(member_texts),
                term_weights,
                provider,
                candidates=current,
                tokenizer=tokenizer,
            )
    return tuple(current[:size])


def fit(
    sentences: Sequence[Sentence],
    provider: EmbeddingProvider,
    reducer: Reducer,
    clusterer: Clusterer,
    seed: SeedTopicSet | None = None,
    config: PipelineConfig | None = None,
) -> TopicModel:
    """Fit the guided topic model.

    Pipeline order: embed, seed-nudge, reduce, cluster, c-TF-IDF,
    representation chain. Sentences in no dense cluster get topic_id -1.
    Topic ids are assigned by descending cluster size.
    """
    config = config or PipelineConfig()
    sentences = tuple(sentences)
    if len(sentences) < 2 * config.min_cluster_size:
        raise ValueError(
            f"need at least 2 * min_cluster_size = {2 * config.min_cluster_size} "
            f"sentences to fit, got {len(sentences)}"
        )
    ids = [s.sentence_id for s in sentences]
    if len(set(ids)) != len(ids):
        raise ValueError("sentences contain duplicate sentence_ids")

    texts = [s.text for s in sentences]
    embeddings = np.asarray(provider.embed(texts), dtype=np.float64)

    if seed is not None and len(seed):
        nudged, seed_terms = apply_seed(embeddings, seed, provider)
    else:
        nudged, seed_terms = embeddings, frozenset()

    reduced = reducer.reduce(nudged, config)
    raw_labels = np.asarray(clusterer.cluster(reduced, config), dtype=np.int64)
    cluster_labels = [int(c) for c in np.unique(raw_labels) if c != -1]
    if not cluster_labels:
        raise ValueError(
            "clustering produced zero topics "
            f"(min_cluster_size={config.min_cluster_size}, "
            f"n_components={config.n_components}, n_sentences={len(sentences)})"
        )
    sizes = {c: int((raw_labels == c).sum()) for c in cluster_labels}
    remap = {-1: -1}
    for new_id, old in enumerate(sorted(cluster_labels, key=lambda c: (-sizes[c], c))):
        remap[old] = new_id
    assignments = np.array([remap[int(c)] for c in raw_labels], dtype=np.int64)
    topic_ids = sorted(set(assignments.tolist()))

    tokenizer = TokenizerConfig(
        ngram_len=config.ngram_len, stopwords_enabled=config.stopwords_enabled
    )
    token_lists = [tokenize(t, tokenizer) for t in texts]
    df: Counter = Counter()
    for tokens in token_lists:
        df.update(set(tokens))
    vocab = sorted(t for t, n in df.items() if n >= 2)

    members: dict[int, list[int]] = {tid: [] for tid in topic_ids}
    for pos, tid in enumerate(assignments.tolist()):
        members[tid].append(pos)

    # a topic none of whose terms cleared min_df keeps its most frequent
    # term so the c-TF-IDF row stays non-zero
    vocab_set = set(vocab)
    for tid in topic_ids:
        topic_tokens = Counter()
        for pos in members[tid]:
            topic_tokens.update(token_lists[pos])
        if topic_tokens and not (set(topic_tokens) & vocab_set):
            keep, _ = max(topic_tokens.items(), key=lambda kv: (kv[1], kv[0]))
            vocab_set.add(keep)
    vocab = sorted(vocab_set)
    if not vocab:
        raise ValueError("no vocabulary terms survive; sentences have no usable tokens")
    col = {t: i for i, t in enumerate(vocab)}

    counts = np.zeros((len(topic_ids), len(vocab)), dtype=np.int64)
    for row, tid in enumerate(topic_ids):
        for pos in members[tid]:
            for token in token_lists[pos]:
                j = col.get(token)
                if j is not None:
                    counts[row, j] += 1

    weights = _weights_from_counts(counts, config, seed_terms, vocab)

    topics = []
    for row, tid in enumerate(topic_ids):
        positions = members[tid]
        member_ids = tuple(ids[p] for p in positions)
        embedding = mean_vector([embeddings[p] for p in positions])
        term_weights = {
            vocab[j]: float(weights[row, j])
            for j in np.flatnonzero(weights[row])
        }
        representation = build_representation(
            term_weights,
            [texts[p] for p in positions],
            provider,
            config,
            tokenizer,
        )
        topics.append(
            Topic(
                topic_id=tid,
                member_sentence_ids=member_ids,
                embedding=embedding,
                representation=representation,
            )
        )

    return TopicModel(
        topics=tuple(topics),
        config=config,
        model_id=provider.model_id,
        vocabulary=tuple(vocab),
        term_counts=counts,
        ctfidf_weights=weights,
        sentences=sentences,
        embeddings=embeddings,
        seed_terms=seed_terms,
    )


def _write_embeddings(path: Path, matrix: np.ndarray) -> None:
    n, d = matrix.shape
    with path.open("wb") as fh:
        fh.write(_EMBEDDINGS_MAGIC)
        fh.write(struct.pack("<II", n, d))
        fh.write(np.ascontiguousarray(matrix, dtype="<f4").tobytes())


def _read_embeddings(path: Path) -> np.ndarray:
    blob = path.read_bytes()
    if blob[:4] != _EMBEDDINGS_MAGIC:
        raise ModelFormatError(f"{path.name}: bad magic, not an embeddings block")
    n, d = struct.unpack("<II", blob[4:12])
    expected = 12 + 4 * n * d
    if len(blob) != expected:
        raise ModelFormatError(
            f"{path.name}: expected {expected} bytes for {n}x{d} float32, got {len(blob)}"
        )
    data = np.frombuffer(blob, dtype="<f4", offset=12, count=n * d)
    return data.reshape(n, d).astype(np.float64)


def save_model(model: TopicModel, path: str | Path) -> None:
    """Write the model directory.

    Layout: config.json, vocabulary.json, topics.jsonl, sentences.jsonl,
    embeddings.bin (little-endian float32, row-major, 12-byte header).
    c-TF-IDF weights and topic embeddings are derived data, recomputed on
    load from counts and sentence embeddings.
    """
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.json").write_text(
        json.dumps(
            {
                "format_version": MODEL_FORMAT_VERSION,
                "model_id": model.model_id,
                "config": model.config.to_dict(),
                "seed_terms": sorted(model.seed_terms),
            },
            indent=2,
        )
    )
    (out / "vocabulary.json").write_text(json.dumps(list(model.vocabulary)))
    with (out / "topics.jsonl").open("w") as fh:
        for row, topic in enumerate(model.topics):
            sparse = {
                str(j): int(model.term_counts[row, j])
                for j in np.flatnonzero(model.term_counts[row])
            }
            fh.write(
                json.dumps(
                    {
                        "topic_id": topic.topic_id,
                        "member_sentence_ids": list(topic.member_sentence_ids),
                        "representation": [[t, w] for t, w in topic.representation],
                        "counts": sparse,
                    }
                )
                + "\n"
            )
    with (out / "sentences.jsonl").open("w") as fh:
        for s in model.sentences:
            fh.write(
                json.dumps(
                    {"sentence_id": s.sentence_id, "section_id": s.section_id, "text": s.text}
                )
                + "\n"
            )
    _write_embeddings(out / "embeddings.bin", model.embeddings)


def load_model(path: str | Path) -> TopicModel:
    """Load a model directory; load(save(m)) reproduces m exactly."""
    root = Path(path)
    config_path = root / "config.json"
    if not config_path.exists():
        raise ModelFormatError(f"no config.json under {root}")
    try:
        header = json.loads(config_path.read_text())
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"config.json is not valid JSON: {exc}") from exc
    version = header.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"model format version {version} is not supported "
            f"(this build reads version {MODEL_FORMAT_VERSION})"
        )
    config = PipelineConfig.from_dict(header["config"])
    seed_terms = frozenset(header["seed_terms"])
    vocabulary = tuple(json.loads((root / "vocabulary.json").read_text()))

    sentences = []
    with (root / "sentences.jsonl").open() as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                sentences.append(
                    Sentence(
                        sentence_id=row["sentence_id"],
                        section_id=row["section_id"],
                        text=row["text"],
                    )
                )
    embeddings = _read_embeddings(root / "embeddings.bin")
    if embeddings.shape[0] != len(sentences):
        raise ModelFormatError(
            f"embeddings block has {embeddings.shape[0]} rows "
            f"for {len(sentences)} sentences"
        )
    index = {s.sentence_id: i for i, s in enumerate(sentences)}

    raw_topics = []
    with (root / "topics.jsonl").open() as fh:
        for line in fh:
            if line.strip():
                raw_topics.append(json.loads(line))

    counts = np.zeros((len(raw_topics), len(vocabulary)), dtype=np.int64)
    for row, raw in enumerate(raw_topics):
        for j, n in raw["counts"].items():
            counts[row, int(j)] = int(n)
    weights = _weights_from_counts(counts, config, seed_terms, vocabulary)

    topics = []
    for raw in raw_topics:
        member_ids = tuple(raw["member_sentence_ids"])
        missing = [sid for sid in member_ids if sid not in index]
        if missing:
            raise ModelFormatError(f"topic {raw['topic_id']} references unknown sentence {missing[0]}")
        embedding = mean_vector([embeddings[index[sid]] for sid in member_ids])
        topics.append(
            Topic(
                topic_id=int(raw["topic_id"]),
                member_sentence_ids=member_ids,
                embedding=embedding,
                representation=tuple((t, float(w)) for t, w in raw["representation"]),
            )
        )

    return TopicModel(
        topics=tuple(topics),
        config=config,
        model_id=header["model_id"],
        vocabulary=vocabulary,
        term_counts=counts,
        ctfidf_weights=weights,
        sentences=tuple(sentences),
        embeddings=embeddings,
        seed_terms=seed_terms,
    )
