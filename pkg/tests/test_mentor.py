"""Term augmentation: goldens, hallucination filtering, degraded totality."""

import json

import pytest

from docadopt.mentor.augment import (
    Augmentation,
    TechnicalTerm,
    augment,
    detect,
    expand,
    explain,
    occurs_verbatim,
    replay,
)
from docadopt.mentor.llm import LlmError, StubLlmProvider

GOLDEN_NAMES = ("license_ml", "functional_web", "compatibility_db", "maintenance_net")


def load_golden_augmentation(fixtures_dir, name):
    path = fixtures_dir / "golden" / "augmentations" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.mark.parametrize("name", GOLDEN_NAMES)
def test_goldens_round_trip_and_replay(fixtures_dir, name):
    data = load_golden_augmentation(fixtures_dir, name)
    aug = Augmentation.from_dict(data)
    assert aug.to_dict() == data
    assert Augmentation.from_json(aug.to_json()).to_dict() == data
    # replaying the recorded exchanges reproduces the artifact exactly
    assert replay(aug).to_dict() == data

    assert aug.degraded is False
    assert [t.source for t in aug.terms].count("tfidf") == 5
    assert [t.source for t in aug.terms].count("llm") == 3
    assert [(x.purpose, x.ok) for x in aug.prompt_log] == [("expand", True), ("explain", True)]
    for term in aug.terms:
        assert occurs_verbatim(term.term, aug.paragraph)
        assert term.explanation and term.explanation != "unavailable"


@pytest.mark.parametrize("name", GOLDEN_NAMES)
def test_goldens_regenerate_from_the_index(fixtures_dir, fixture_index, name):
    data = load_golden_augmentation(fixtures_dir, name)
    fresh = augment(
        data["paragraph"], data["oss_domain"], fixture_index, StubLlmProvider(seed=0)
    )
    assert fresh.to_dict() == data


def test_detect_matches_goldens_tfidf_head(fixtures_dir, fixture_index):
    data = load_golden_augmentation(fixtures_dir, "license_ml")
    detected = detect(data["paragraph"], data["oss_domain"], fixture_index)
    golden_tfidf = [t for t in data["terms"] if t["source"] == "tfidf"]
    assert [(t.term, t.score) for t in detected] == [
        (t["term"], t["score"]) for t in golden_tfidf
    ]
    with pytest.raises(ValueError, match="non-empty"):
        detect("   ", data["oss_domain"], fixture_index)


class OneShot:
    """Returns one fixed response to any prompt."""

    model_id = "oneshot"

    def __init__(self, response):
        self.response = response
        self.prompts = []

    def complete(self, prompt):
        self.prompts.append(prompt)
        return self.response


def test_expand_rejects_hallucinated_terms():
    paragraph = "The scheduler assigns worker shards to request queues."
    detected = [TechnicalTerm(term="scheduler", source="tfidf", score=1.0)]
    llm = OneShot("worker shards\nkubernetes\nScheduler\nrequest queues\n")
    result = expand(paragraph, detected, llm, "networking")
    kept = [t.term for t in result.terms]
    # kubernetes is absent from the paragraph, Scheduler is a duplicate
    assert kept == ["scheduler", "worker shards", "request queues"]
    assert all(t.source == "llm" for t in result.terms[1:])
    assert result.degraded is False
    assert len(result.exchanges) == 1 and result.exchanges[0].ok
    assert paragraph in llm.prompts[0]


def test_expand_strips_bullets_and_none_marker():
    paragraph = "Connection pooling reuses sockets."
    llm = OneShot("- Connection pooling\n2) sockets\n(none)\n")
    result = expand(paragraph, [], llm, "database")
    assert [t.term for t in result.terms] == ["Connection pooling", "sockets"]


def test_expand_degrades_on_provider_failure():
    detected = [TechnicalTerm(term="alpha", source="tfidf", score=2.0)]
    result = expand("alpha text", detected, StubLlmProvider(fail=True), "database")
    assert result.terms == tuple(detected)
    assert result.degraded is True
    assert len(result.exchanges) == 1
    assert result.exchanges[0].ok is False
    assert "fail" in result.exchanges[0].response


def test_explain_is_total_over_partial_responses():
    paragraph = "alpha beats beta."
    terms = (
        TechnicalTerm(term="alpha", source="tfidf", score=1.0),
        TechnicalTerm(term="beta", source="llm"),
    )
    llm = OneShot(
        "TERM: alpha\nEXPLANATION: the first thing\nEXAMPLES: one; two\nREFERENCES: a guide\n"
        "---\nTERM: beta\nWHATEVER: no explanation here\n"
    )
    aug = explain(paragraph, terms, llm, "database")
    assert aug.degraded is True  # beta's block was malformed
    by_term = {t.term: t for t in aug.terms}
    assert by_term["alpha"].explanation == "the first thing"
    assert by_term["alpha"].examples == ("one", "two")
    assert by_term["alpha"].references == ("a guide",)
    assert by_term["beta"].explanation == "unavailable"
    assert [x.purpose for x in aug.prompt_log] == ["explain"]

    with pytest.raises(ValueError, match="at least one term"):
        explain(paragraph, (), llm, "database")


def test_fully_failed_pipeline_still_replays(fixture_index):
    paragraph = (
        "The replication protocol streams tensor checkpoints to every "
        "trainer node in the cluster."
    )
    aug = augment(paragraph, "machine-learning", fixture_index, StubLlmProvider(fail=True))
    assert aug.degraded is True
    assert [x.ok for x in aug.prompt_log] == [False, False]
    assert all(t.explanation == "unavailable" for t in aug.terms)
    assert all(t.source == "tfidf" for t in aug.terms)
    # bit-identical replay including the failures
    assert replay(aug).to_dict() == aug.to_dict()


def test_augment_with_no_terms_skips_explain(fixture_index):
    aug = augment("it is ok now.", "machine-learning", fixture_index, StubLlmProvider())
    assert aug.terms == ()
    assert [x.purpose for x in aug.prompt_log] == ["expand"]
    assert aug.degraded is False
    assert replay(aug).to_dict() == aug.to_dict()


def test_occurs_verbatim_rules():
    assert occurs_verbatim("cat", "A cat sat.") is True
    assert occurs_verbatim("cat", "concatenate") is False
    assert occurs_verbatim("CAT", "the cat") is True
    assert occurs_verbatim("gradient descent", "uses Gradient\n   Descent a lot") is True
    assert occurs_verbatim("lag", "replication-lag matters") is True  # hyphen is a boundary
    assert occurs_verbatim("", "anything") is False
    assert occurs_verbatim("cat", "") is False


def test_validation_rules():
    with pytest.raises(ValueError, match="verbatim"):
        Augmentation(
            paragraph="only alpha here",
            oss_domain="database",
            terms=(TechnicalTerm(term="beta", source="llm"),),
        )
    with pytest.raises(ValueError, match="duplicate"):
        Augmentation(
            paragraph="alpha Alpha",
            oss_domain="database",
            terms=(
                TechnicalTerm(term="alpha", source="tfidf", score=1.0),
                TechnicalTerm(term="Alpha", source="llm"),
            ),
        )
    with pytest.raises(ValueError, match="non-empty"):
        TechnicalTerm(term="  ", source="llm")
    with pytest.raises(ValueError, match="source"):
        TechnicalTerm(term="x", source="human")
    with pytest.raises(ValueError, match="score"):
        TechnicalTerm(term="x", source="llm", score=0.5)
