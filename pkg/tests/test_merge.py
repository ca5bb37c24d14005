"""Merging topics into TOIs: planning, algebra, outlier reduction, persistence."""

import numpy as np
import pytest

from docadopt.adoptmap.merge import (
    MergePlan,
    build_adoption_map,
    find_similar_topics,
    load_merged,
    merge,
    reduce_outliers,
    resolve_conflicts,
    save_merged,
    update_representations,
)
from docadopt.adoptmap.tois import LABELS, TOI_NAMES, Thresholds, ToiSpec
from docadopt.corpus.tokenize import tokenize
from docadopt.embed import HashingProvider, cosine
from docadopt.ingest.records import Sentence
from docadopt.topics import PipelineConfig, ThresholdClusterer, TruncateReducer, fit
from docadopt.topics.model import ModelFormatError

CFG = PipelineConfig(n_components=64, min_cluster_size=3, min_dist=0.0)


def merge_sentences():
    rows = []
    for i in range(8):
        rows.append(Sentence(f"a{i}", "sec-a", f"alpha engine handles alpha workloads smoothly a{i}x"))
    for i in range(5):
        rows.append(Sentence(f"b{i}", "sec-b", f"beta storage keeps beta records safe b{i}x"))
    for i in range(4):
        rows.append(Sentence(f"g{i}", "sec-g", f"gamma parser reads gamma grammars quickly g{i}x"))
    # odd0 shares one token with the alpha pool: an outlier close enough
    # to reassign, while odd1 stays noise
    rows.append(Sentence("odd0", "sec-o", "alpha quartz mineral stone vein"))
    rows.append(Sentence("odd1", "sec-o", "zephyr kite"))
    return tuple(rows)


TOIS = (
    ToiSpec("License", ("alpha", "engine")),
    ToiSpec("Functional Suitability", ("beta storage",)),
    ToiSpec("Compatibility", ("gamma grammars", "parser")),
    ToiSpec("Project's Maintenance", ("quux zork",)),
)


@pytest.fixture(scope="module")
def provider():
    return HashingProvider(dim=64, seed=7)


@pytest.fixture(scope="module")
def model(provider):
    return fit(
        merge_sentences(),
        provider,
        TruncateReducer(),
        ThresholdClusterer(distance_threshold=0.5),
        config=CFG,
    )


@pytest.fixture(scope="module")
def plan(model, provider):
    return resolve_conflicts(
        {toi.name: find_similar_topics(model, toi, provider) for toi in TOIS}
    )


@pytest.fixture(scope="module")
def merged(model, plan, provider):
    return merge(model, plan, provider)


def test_find_similar_topics_matches_cosine_oracle(model, provider):
    thresholds = Thresholds()
    for toi in TOIS:
        search = provider.embed([toi.search_string])[0]
        expected = sorted(
            (
                (t.topic_id, cosine(search, t.embedding))
                for t in model.topics
                if t.topic_id != -1 and cosine(search, t.embedding) >= thresholds.topics_similarity
            ),
            key=lambda ts: (-ts[1], ts[0]),
        )
        assert find_similar_topics(model, toi, provider) == expected
    # one clean topic per TOI in this corpus, none for the nonsense TOI
    hits = {toi.name: find_similar_topics(model, toi, provider) for toi in TOIS}
    assert [tid for tid, _ in hits["License"]] == [0]
    assert [tid for tid, _ in hits["Functional Suitability"]] == [1]
    assert [tid for tid, _ in hits["Compatibility"]] == [2]
    assert hits["Project's Maintenance"] == []


def test_find_similar_topics_threshold_is_inclusive(model, provider):
    toi = TOIS[0]
    search = provider.embed([toi.search_string])[0]
    sim = cosine(search, model.topic(0).embedding)
    at = Thresholds(topics_similarity=sim)
    assert (0, sim) in find_similar_topics(model, toi, provider, at)
    above = Thresholds(topics_similarity=min(1.0, sim + 1e-9))
    assert find_similar_topics(model, toi, provider, above) == []


def test_resolve_conflicts_keeps_highest_similarity():
    plan = resolve_conflicts(
        {
            "License": [(3, 0.9), (7, 0.5)],
            "Compatibility": [(3, 0.6), (4, 0.8)],
        }
    )
    assert plan.entries["License"] == ((3, 0.9), (7, 0.5))
    assert plan.entries["Compatibility"] == ((4, 0.8),)
    assert plan.entries["Functional Suitability"] == ()


def test_resolve_conflicts_tie_keeps_declaration_order():
    # insertion order reversed on purpose: the tie must fall to the TOI
    # earlier in declaration order, not earlier in the mapping
    plan = resolve_conflicts(
        {
            "Project's Maintenance": [(5, 0.75)],
            "Functional Suitability": [(5, 0.75)],
        }
    )
    assert plan.entries["Functional Suitability"] == ((5, 0.75),)
    assert plan.entries["Project's Maintenance"] == ()


def test_merge_plan_validation():
    with pytest.raises(ValueError, match="outlier"):
        MergePlan(entries={"License": ((-1, 0.5),)})
    with pytest.raises(ValueError, match="both"):
        MergePlan(entries={"License": ((2, 0.5),), "Compatibility": ((2, 0.4),)})
    with pytest.raises(ValueError, match="unknown TOI"):
        MergePlan(entries={"Security": ((2, 0.5),)})


def test_merge_composition(model, plan, merged):
    assert tuple(lt.label for lt in merged.label_topics) == LABELS
    assert merged.label_topic("License").member_sentence_ids == model.topic(0).member_sentence_ids
    assert merged.label_topic("License").merged_from == ((0, 8),)
    assert merged.label_topic("Outlier").member_sentence_ids == model.topic(-1).member_sentence_ids
    empty = merged.label_topic("Project's Maintenance")
    assert empty.empty and empty.embedding is None and empty.representation == ()
    assert merged.total_members() == len(model.sentences)
    labels = merged.sentence_labels()
    assert labels["a3"] == "License" and labels["b0"] == "Functional Suitability"
    assert labels["odd1"] == "Outlier"


def test_merge_rejects_unknown_topics(model, provider):
    bad = MergePlan(entries={"License": ((42, 0.9),)})
    with pytest.raises(ValueError, match="42"):
        merge(model, bad, provider)


def test_merge_embedding_algebra_over_random_plans(model, provider):
    rng = np.random.default_rng(11)
    mergeable = [tid for tid in model.topic_ids if tid != -1]
    all_ids = {s.sentence_id for s in model.sentences}
    for _ in range(30):
        entries = {name: [] for name in TOI_NAMES}
        for tid in mergeable:
            choice = rng.integers(0, len(TOI_NAMES) + 1)
            if choice < len(TOI_NAMES):
                entries[TOI_NAMES[choice]].append((tid, float(rng.random())))
        merged = merge(model, MergePlan(entries=entries), provider)

        assert merged.total_members() == len(model.sentences)
        seen = [sid for lt in merged.label_topics for sid in lt.member_sentence_ids]
        assert len(seen) == len(set(seen)) and set(seen) == all_ids

        for lt in merged.label_topics:
            if lt.empty:
                assert lt.embedding is None
                continue
            vectors = np.array([model.topic(tid).embedding for tid, _ in lt.merged_from])
            sizes = np.array([size for _, size in lt.merged_from], dtype=float)
            expected = np.average(vectors, axis=0, weights=sizes)
            np.testing.assert_allclose(lt.embedding, expected, atol=1e-9)
            assert sum(size for _, size in lt.merged_from) == lt.size


def test_reduce_outliers_moves_by_cosine(model, merged):
    reduced = reduce_outliers(merged)

    index = model.sentence_index()
    tois = [lt for lt in merged.label_topics if lt.label != "Outlier" and not lt.empty]
    expected_moves = {}
    for sid in merged.label_topic("Outlier").member_sentence_ids:
        sims = [cosine(model.embeddings[index[sid]], lt.embedding) for lt in tois]
        best = int(np.argmax(sims))
        if sims[best] >= merged.thresholds.reduction_min_similarity:
            expected_moves[sid] = tois[best].label
    assert expected_moves == {"odd0": "License"}

    assert reduced.label_topic("Outlier").member_sentence_ids == ("odd1",)
    assert reduced.label_topic("License").member_sentence_ids[-1] == "odd0"
    for before, after in zip(merged.label_topics, reduced.label_topics):
        # embeddings and representations are frozen at merge time
        if before.embedding is None:
            assert after.embedding is None
        else:
            np.testing.assert_array_equal(before.embedding, after.embedding)
        assert before.representation == after.representation
        assert before.merged_from == after.merged_from
    assert reduced.total_members() == len(model.sentences)

    # nothing else clears the threshold on a second pass
    assert reduce_outliers(reduced) is reduced
    # an unreachable threshold moves nothing and short-circuits
    assert reduce_outliers(merged, Thresholds(reduction_min_similarity=1.0)) is merged


def test_update_representations_refreshes_terms_only(model, merged, provider):
    reduced = reduce_outliers(merged)
    updated = update_representations(reduced, provider)
    for before, after in zip(reduced.label_topics, updated.label_topics):
        assert before.member_sentence_ids == after.member_sentence_ids
        assert before.merged_from == after.merged_from
        if before.embedding is not None:
            np.testing.assert_array_equal(before.embedding, after.embedding)
        if after.representation == ():
            # only when no member token is in the vocabulary (empty
            # labels, or the post-reduction outlier holding odd1 alone)
            texts = {s.sentence_id: s.text for s in model.sentences}
            member_tokens = {
                tok
                for sid in after.member_sentence_ids
                for tok in tokenize(texts[sid], model.tokenizer())
            }
            assert not (member_tokens & set(model.vocabulary))
        else:
            assert len(after.representation) <= merged.thresholds.topic_representation_size
            terms = [t for t, _ in after.representation]
            assert len(set(terms)) == len(terms)
            assert set(terms) <= set(model.vocabulary)
    # the License label gained odd0, so its term list sees the new tokens
    license_terms = {t for t, _ in updated.label_topic("License").representation}
    assert "alpha" in license_terms


def test_build_adoption_map_is_the_documented_chain(model, plan, provider):
    via_helper = build_adoption_map(model, TOIS, provider)
    manual = update_representations(
        reduce_outliers(merge(model, plan, provider)), provider
    )
    assert via_helper.equals(manual)
    assert manual.equals(via_helper)


def test_merged_round_trip(model, plan, provider, tmp_path):
    merged = build_adoption_map(model, TOIS, provider)
    out = tmp_path / "merged"
    save_merged(merged, out)
    loaded = load_merged(out)
    assert loaded.equals(merged)
    assert loaded.base.equals(model)

    import json

    payload = json.loads((out / "merged.json").read_text())
    payload["format_version"] = 3
    (out / "merged.json").write_text(json.dumps(payload))
    with pytest.raises(ModelFormatError, match="version"):
        load_merged(out)
    (out / "merged.json").unlink()
    with pytest.raises(ModelFormatError, match="merged.json"):
        load_merged(out)
