"""Domain index and tech_score against an independent recount."""

import math

import pytest

from docadopt.corpus.index import (
    DomainIndex,
    build_index,
    load_index,
    save_index,
    tech_score,
    top_terms,
)
from docadopt.corpus.tokenize import TokenizerConfig, tokenize


def make_index(docs_by_domain: dict[str, list[str]]) -> DomainIndex:
    """Builds an index straight from token lists, bypassing build_index."""
    cfg = TokenizerConfig(stopwords_enabled=False)
    tf: dict[str, dict[str, int]] = {}
    df: dict[str, dict[str, int]] = {}
    n_sections: dict[str, int] = {}
    for domain, docs in docs_by_domain.items():
        tf[domain] = {}
        df[domain] = {}
        n_sections[domain] = len(docs)
        for doc in docs:
            tokens = tokenize(doc, cfg)
            for t in tokens:
                tf[domain][t] = tf[domain].get(t, 0) + 1
            for t in set(tokens):
                df[domain][t] = df[domain].get(t, 0) + 1
    return DomainIndex(tf=tf, df=df, n_sections=n_sections, tokenizer=cfg)


def oracle_score(index: DomainIndex, term: str, domain: str) -> float:
    tf = index.tf[domain].get(term, 0)
    if tf < 1:
        return 0.0
    df = index.df[domain][term]
    df_dom = sum(1 for d in index.tf if term in index.tf[d])
    n_domains = len(index.tf)
    if df_dom == n_domains:
        return 0.0
    return (1.0 + math.log(tf)) * (df / index.n_sections[domain]) * math.log(n_domains / df_dom)


def test_hand_case_exclusive_term():
    # D=2; tf=5, df=3 of 4 sections, absent elsewhere:
    # (1 + ln 5) * (3/4) * ln 2 = 1.357...
    index = make_index(
        {
            "a": [
                "tensor tensor rises",
                "tensor tensor falls",
                "tensor alone",
                "plain words here",
            ],
            "b": ["other talk entirely", "more other talk"],
        }
    )
    want = (1.0 + math.log(5)) * (3 / 4) * math.log(2)
    assert tech_score(index, "tensor", "a") == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(1.357, abs=5e-4)


def test_hand_case_single_occurrence():
    # tf=1, df=1/1, one of two domains: 1 * 1 * ln 2 = 0.693...
    index = make_index({"a": ["gradient descent"], "b": ["nothing shared"]})
    assert tech_score(index, "gradient", "a") == pytest.approx(math.log(2), abs=1e-12)


def test_everywhere_term_scores_zero():
    index = make_index({"a": ["shared word"], "b": ["shared again"], "c": ["shared thrice"]})
    assert tech_score(index, "shared", "a") == 0.0


def test_absent_term_scores_zero_and_unknown_domain_raises():
    index = make_index({"a": ["something"], "b": ["else"]})
    assert tech_score(index, "missing", "a") == 0.0
    with pytest.raises(KeyError):
        tech_score(index, "something", "nope")


def test_matches_oracle_on_random_indexes():
    import random

    rng = random.Random(13)
    words = [f"w{i}" for i in range(40)]
    for trial in range(100):
        n_domains = rng.randint(2, 5)
        docs_by_domain = {}
        for d in range(n_domains):
            docs = []
            for _ in range(rng.randint(1, 6)):
                docs.append(" ".join(rng.choices(words, k=rng.randint(1, 12))))
            docs_by_domain[f"d{d}"] = docs
        index = make_index(docs_by_domain)
        for domain in docs_by_domain:
            for term in list(index.tf[domain])[:10] + ["w0", "nothere"]:
                got = tech_score(index, term, domain)
                want = oracle_score(index, term, domain)
                assert got == pytest.approx(want, abs=1e-12), (trial, domain, term)


def test_score_laws():
    """Monotonicity in tf and the two hard zeros."""
    base = make_index({"a": ["spark spark", "spark boring"], "b": ["dull stuff"]})
    more = make_index({"a": ["spark spark spark", "spark boring"], "b": ["dull stuff"]})
    assert tech_score(more, "spark", "a") > tech_score(base, "spark", "a") > 0
    # spreading into every domain kills the score entirely
    everywhere = make_index({"a": ["spark here"], "b": ["spark there"]})
    assert tech_score(everywhere, "spark", "a") == 0.0


def test_top_terms_sorted_and_tie_broken_alphabetically():
    index = make_index(
        {
            "a": ["zebra apple zebra apple mango"],
            "b": ["unrelated text lives here"],
        }
    )
    # apple and zebra tie exactly (same tf, df); apple must come first
    scored = top_terms(index, "zebra apple mango", "a", k=3)
    assert [t for t, _ in scored] == ["apple", "zebra", "mango"]
    assert scored[0][1] == pytest.approx(scored[1][1], abs=1e-15)
    # zero-scoring and absent terms are dropped
    assert top_terms(index, "nothing matches", "a", k=5) == []
    with pytest.raises(ValueError):
        top_terms(index, "x", "a", k=0)


def test_build_index_counts_sections_not_sentences(fixture_corpus, fixture_index):
    for domain in fixture_index.n_sections:
        assert fixture_index.n_sections[domain] == len(fixture_corpus.sections_of_domain(domain))


def test_save_load_round_trip(tmp_path, fixture_index):
    path = tmp_path / "index.json"
    save_index(fixture_index, path)
    again = load_index(path)
    assert again.tf == fixture_index.tf
    assert again.df == fixture_index.df
    assert again.n_sections == fixture_index.n_sections
    assert again.tokenizer == fixture_index.tokenizer
