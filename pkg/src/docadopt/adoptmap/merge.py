"""Topic-to-TOI merging, outlier reduction, merged-model persistence."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from docadopt.corpus.tokenize import tokenize
from docadopt.embed.base import EmbeddingProvider, cosine, mean_vector
from docadopt.adoptmap.tois import LABELS, OUTLIER_LABEL, TOI_NAMES, Thresholds, ToiSpec
from docadopt.topics.model import (
    ModelFormatError,
    TopicModel,
    build_representation,
    load_model,
    save_model,
    _weights_from_counts,
)

MERGED_FORMAT_VERSION = 1

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MergePlan:
    """Conflict-free assignment of topics to TOIs.

    entries maps each TOI name to its (topic_id, similarity) list; every
    topic id appears under at most one TOI.
    """

    entries: dict[str, tuple[tuple[int, float], ...]]

    def __post_init__(self) -> None:
        normalized: dict[str, tuple[tuple[int, float], ...]] = {}
        seen: dict[int, str] = {}
        for name in self.entries:
            if name not in TOI_NAMES:
                raise ValueError(f"unknown TOI in plan: {name!r}")
        for name in TOI_NAMES:
            pairs = tuple((int(t), float(s)) for t, s in self.entries.get(name, ()))
            for topic_id, _ in pairs:
                if topic_id == -1:
                    raise ValueError("the outlier topic (-1) cannot be merged into a TOI")
                if topic_id in seen:
                    raise ValueError(
                        f"topic {topic_id} appears under both {seen[topic_id]!r} and {name!r}"
                    )
                seen[topic_id] = name
            normalized[name] = pairs
        object.__setattr__(self, "entries", normalized)

    def topic_ids(self) -> frozenset[int]:
        return frozenset(t for pairs in self.entries.values() for t, _ in pairs)


@dataclass(frozen=True, eq=False)
class LabelTopic:
    """One prediction label's merged topic.

    merged_from records the (topic_id, size) composition at merge time;
    the embedding is the size-weighted mean over that composition and is
    never recomputed afterwards, so outlier reduction moves members
    without moving any label's embedding.
    """

    label: str
    member_sentence_ids: tuple[str, ...]
    embedding: np.ndarray | None
    representation: tuple[tuple[str, float], ...]
    merged_from: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.member_sentence_ids)

    @property
    def empty(self) -> bool:
        return not self.member_sentence_ids

    def equals(self, other: "LabelTopic") -> bool:
        if (self.embedding is None) != (other.embedding is None):
            return False
        return (
            self.label == other.label
            and self.member_sentence_ids == other.member_sentence_ids
            and (self.embedding is None or np.array_equal(self.embedding, other.embedding))
            and self.representation == other.representation
            and self.merged_from == other.merged_from
        )


@dataclass(frozen=True, eq=False)
class MergedTopicModel:
    """The five-label model produced by merging a fitted TopicModel."""

    base: TopicModel
    thresholds: Thresholds
    label_topics: tuple[LabelTopic, ...]

    def __post_init__(self) -> None:
        if tuple(lt.label for lt in self.label_topics) != LABELS:
            raise ValueError(f"label topics must be exactly {LABELS} in order")

    @property
    def labels(self) -> tuple[str, ...]:
        return LABELS

    def label_topic(self, label: str) -> LabelTopic:
        for lt in self.label_topics:
            if lt.label == label:
                return lt
        raise KeyError(f"no label {label!r}")

    def sentence_labels(self) -> dict[str, str]:
        """sentence_id -> label over all members."""
        out: dict[str, str] = {}
        for lt in self.label_topics:
            for sid in lt.member_sentence_ids:
                out[sid] = lt.label
        return out

    def total_members(self) -> int:
        return sum(lt.size for lt in self.label_topics)

    def equals(self, other: "MergedTopicModel") -> bool:
        return (
            self.thresholds == other.thresholds
            and self.base.equals(other.base)
            and len(self.label_topics) == len(other.label_topics)
            and all(a.equals(b) for a, b in zip(self.label_topics, other.label_topics))
        )

    def save(self, path: str | Path) -> None:
        save_merged(self, path)

    @classmethod
    def load(cls, path: str | Path) -> "MergedTopicModel":
        return load_merged(path)


def find_similar_topics(
    model: TopicModel,
    toi: ToiSpec,
    provider: EmbeddingProvider,
    thresholds: Thresholds | None = None,
) -> list[tuple[int, float]]:
    """Topics whose embedding clears topics_similarity against the TOI
    search string, best first. The outlier topic (-1) never qualifies as
    a merge candidate."""
    thresholds = thresholds or Thresholds()
    search = provider.embed([toi.search_string])[0]
    hits = []
    for topic in model.topics:
        if topic.topic_id == -1:
            continue
        sim = cosine(search, topic.embedding)
        if sim >= thresholds.topics_similarity:
            hits.append((topic.topic_id, sim))
    hits.sort(key=lambda ts: (-ts[1], ts[0]))
    return hits


def resolve_conflicts(
    plans: Mapping[str, Sequence[tuple[int, float]]],
) -> MergePlan:
    """Keep each topic only under the TOI with the highest similarity.

    Exact ties keep the earliest TOI in declaration order, logged.
    """
    best: dict[int, tuple[float, str]] = {}
    ordered_names = [n for n in TOI_NAMES if n in plans] + [
        n for n in plans if n not in TOI_NAMES
    ]
    for name in ordered_names:
        for topic_id, sim in plans[name]:
            if topic_id not in best:
                best[topic_id] = (sim, name)
            elif sim > best[topic_id][0]:
                best[topic_id] = (sim, name)
            elif sim == best[topic_id][0]:
                log.info(
                    "topic %d tied at %.6f between %r and %r; keeping %r",
                    topic_id, sim, best[topic_id][1], name, best[topic_id][1],
                )
    entries = {
        name: tuple(
            (tid, sim)
            for tid, sim in plans.get(name, ())
            if best.get(tid, (None, None))[1] == name
        )
        for name in TOI_NAMES
    }
    return MergePlan(entries=entries)


def _counts_for_members(
    member_texts: Sequence[str], model: TopicModel
) -> np.ndarray:
    """Count vector over the model's vocabulary for a set of sentences."""
    col = {t: i for i, t in enumerate(model.vocabulary)}
    row = np.zeros(len(model.vocabulary), dtype=np.int64)
    tokenizer = model.tokenizer()
    for text in member_texts:
        for token in tokenize(text, tokenizer):
            j = col.get(token)
            if j is not None:
                row[j] += 1
    return row


def _label_representations(
    label_topics: Sequence[LabelTopic],
    model: TopicModel,
    provider: EmbeddingProvider,
    thresholds: Thresholds,
) -> list[tuple[tuple[str, float], ...]]:
    """Representation chain over the current label membership."""
    texts_by_id = {s.sentence_id: s.text for s in model.sentences}
    counts = np.zeros((len(label_topics), len(model.vocabulary)), dtype=np.int64)
    member_texts: list[list[str]] = []
    for i, lt in enumerate(label_topics):
        texts = [texts_by_id[sid] for sid in lt.member_sentence_ids]
        member_texts.append(texts)
        counts[i] = _counts_for_members(texts, model)
    weights = _weights_from_counts(
        counts, model.config, model.seed_terms, model.vocabulary
    )
    out = []
    for i, lt in enumerate(label_topics):
        if lt.empty:
            out.append(())
            continue
        term_weights = {
            model.vocabulary[j]: float(weights[i, j]) for j in np.flatnonzero(weights[i])
        }
        out.append(
            build_representation(
                term_weights,
                member_texts[i],
                provider,
                model.config,
                model.tokenizer(),
                size=thresholds.topic_representation_size,
            )
        )
    return out


def merge(
    model: TopicModel,
    plan: MergePlan,
    provider: EmbeddingProvider,
    thresholds: Thresholds | None = None,
) -> MergedTopicModel:
    """Merge planned topics into their TOIs; everything else becomes Outlier.

    Each TOI's embedding is the size-weighted mean of its merged topics'
    embeddings; the Outlier label folds the unmerged topics and the
    original noise bucket the same way. A TOI with an empty merge list
    stays as an empty label that prediction never selects.
    """
    thresholds = thresholds or Thresholds()
    known = set(model.topic_ids)
    missing = sorted(t for t in plan.topic_ids() if t not in known)
    if missing:
        raise ValueError(f"plan references topics not in the model: {missing}")

    planned = plan.topic_ids()
    label_specs: list[tuple[str, list[int]]] = [
        (OUTLIER_LABEL, [t.topic_id for t in model.topics if t.topic_id not in planned]),
    ]
    for name in TOI_NAMES:
        label_specs.append((name, [tid for tid, _ in plan.entries[name]]))

    label_topics: list[LabelTopic] = []
    for label, topic_ids in label_specs:
        members: list[str] = []
        merged_from: list[tuple[int, int]] = []
        for tid in topic_ids:
            topic = model.topic(tid)
            members.extend(topic.member_sentence_ids)
            merged_from.append((tid, topic.size))
        if members:
            vectors = [model.topic(tid).embedding for tid, _ in merged_from]
            weights = [float(size) for _, size in merged_from]
            embedding = mean_vector(vectors, weights=weights)
        else:
            embedding = None
        label_topics.append(
            LabelTopic(
                label=label,
                member_sentence_ids=tuple(members),
                embedding=embedding,
                representation=(),
                merged_from=tuple(merged_from),
            )
        )

    representations = _label_representations(label_topics, model, provider, thresholds)
    label_topics = [
        LabelTopic(
            label=lt.label,
            member_sentence_ids=lt.member_sentence_ids,
            embedding=lt.embedding,
            representation=rep,
            merged_from=lt.merged_from,
        )
        for lt, rep in zip(label_topics, representations)
    ]
    return MergedTopicModel(
        base=model, thresholds=thresholds, label_topics=tuple(label_topics)
    )


def reduce_outliers(
    merged: MergedTopicModel, thresholds: Thresholds | None = None
) -> MergedTopicModel:
    """Reassign outlier sentences whose best TOI cosine clears
    reduction_min_similarity. Label embeddings and representations are
    left untouched; run update_representations afterwards to refresh the
    term lists."""
    thresholds = thresholds or merged.thresholds
    outlier = merged.label_topic(OUTLIER_LABEL)
    tois = [
        lt for lt in merged.label_topics
        if lt.label != OUTLIER_LABEL and not lt.empty and lt.embedding is not None
    ]
    if not tois or outlier.empty:
        return merged

    index = merged.base.sentence_index()
    moved: dict[str, str] = {}
    for sid in outlier.member_sentence_ids:
        vec = merged.base.embeddings[index[sid]]
        sims = [cosine(vec, lt.embedding) for lt in tois]
        best = int(np.argmax(sims))
        if sims[best] >= thresholds.reduction_min_similarity:
            moved[sid] = tois[best].label

    if not moved:
        return merged

    new_topics = []
    for lt in merged.label_topics:
        if lt.label == OUTLIER_LABEL:
            members = tuple(s for s in lt.member_sentence_ids if s not in moved)
        else:
            gained = tuple(s for s, label in moved.items() if label == lt.label)
            members = lt.member_sentence_ids + gained
        new_topics.append(
            LabelTopic(
                label=lt.label,
                member_sentence_ids=members,
                embedding=lt.embedding,
                representation=lt.representation,
                merged_from=lt.merged_from,
            )
        )
    return MergedTopicModel(
        base=merged.base, thresholds=merged.thresholds, label_topics=tuple(new_topics)
    )


def update_representations(
    merged: MergedTopicModel, provider: EmbeddingProvider
) -> MergedTopicModel:
    """Recompute every label representation from current membership."""
    representations = _label_representations(
        merged.label_topics, merged.base, provider, merged.thresholds
    )
    new_topics = tuple(
        LabelTopic(
            label=lt.label,
            member_sentence_ids=lt.member_sentence_ids,
            embedding=lt.embedding,
            representation=rep,
            merged_from=lt.merged_from,
        )
        for lt, rep in zip(merged.label_topics, representations)
    )
    return MergedTopicModel(
        base=merged.base, thresholds=merged.thresholds, label_topics=new_topics
    )


def build_adoption_map(
    model: TopicModel,
    tois: Sequence[ToiSpec],
    provider: EmbeddingProvider,
    thresholds: Thresholds | None = None,
) -> MergedTopicModel:
    """Full merge pipeline: similarity search per TOI, conflict
    resolution, merge, outlier reduction, representation refresh."""
    thresholds = thresholds or Thresholds()
    plans = {
        toi.name: find_similar_topics(model, toi, provider, thresholds) for toi in tois
    }
    plan = resolve_conflicts(plans)
    merged = merge(model, plan, provider, thresholds)
    merged = reduce_outliers(merged, thresholds)
    return update_representations(merged, provider)


def save_merged(merged: MergedTopicModel, path: str | Path) -> None:
    """Write the merged model: the base model directory plus merged.json."""
    out = Path(path)
    save_model(merged.base, out)
    payload = {
        "format_version": MERGED_FORMAT_VERSION,
        "thresholds": merged.thresholds.to_dict(),
        "labels": [
            {
                "label": lt.label,
                "member_sentence_ids": list(lt.member_sentence_ids),
                "representation": [[t, w] for t, w in lt.representation],
                "merged_from": [[tid, size] for tid, size in lt.merged_from],
            }
            for lt in merged.label_topics
        ],
    }
    (out / "merged.json").write_text(json.dumps(payload, indent=2))


def load_merged(path: str | Path) -> MergedTopicModel:
    root = Path(path)
    merged_path = root / "merged.json"
    if not merged_path.exists():
        raise ModelFormatError(f"no merged.json under {root}")
    base = load_model(root)
    try:
        payload = json.loads(merged_path.read_text())
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"merged.json is not valid JSON: {exc}") from exc
    version = payload.get("format_version")
    if version != MERGED_FORMAT_VERSION:
        raise ModelFormatError(
            f"merged model format version {version} is not supported "
            f"(this build reads version {MERGED_FORMAT_VERSION})"
        )
    label_topics = []
    for raw in payload["labels"]:
        merged_from = tuple((int(t), int(s)) for t, s in raw["merged_from"])
        if merged_from:
            vectors = [base.topic(tid).embedding for tid, _ in merged_from]
            weights = [float(size) for _, size in merged_from]
            embedding = mean_vector(vectors, weights=weights)
        else:
            embedding = None
        label_topics.append(
            LabelTopic(
                label=raw["label"],
                member_sentence_ids=tuple(raw["member_sentence_ids"]),
                embedding=embedding,
                representation=tuple((t, float(w)) for t, w in raw["representation"]),
                merged_from=merged_from,
            )
        )
    return MergedTopicModel(
        base=base,
        thresholds=Thresholds.from_dict(payload["thresholds"]),
        label_topics=tuple(label_topics),
    )
