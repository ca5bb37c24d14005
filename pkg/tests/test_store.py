import dataclasses

import pytest

from docadopt.corpus.store import (
    CorpusBuilder,
    CorpusFormatError,
    CorpusIntegrityError,
    CorpusStore,
    CorpusVersionError,
    load_corpus,
    save_corpus,
)
from docadopt.ingest.records import (
    Page,
    ProjectRef,
    Section,
    Sentence,
    normalize_sentence,
    page_id_for,
    section_id_for,
    sentence_id_for,
)

PROJ = ProjectRef(oss_domain="database", repo_id="o/name",
                  docs_url="https://name.rtd.io/en/latest/", stars=7)


def make_page(path="a.html", text="Alpha fact. Beta fact.", project=PROJ):
    page = Page(page_id=page_id_for(project.repo_id, path), project=project,
                path=path, title=f"Title of {path}")
    heading = (page.title, "H")
    sents = [Sentence(sentence_id=sentence_id_for(t), section_id="", text=t)
             for t in text.split("|")]
    section = Section(
        section_id=section_id_for(page.page_id, heading, 0),
        page_id=page.page_id,
        heading_path=heading,
        text=" ".join(text.split("|")),
        sentence_ids=tuple(s.sentence_id for s in sents),
    )
    sents = [dataclasses.replace(s, section_id=section.section_id) for s in sents]
    return page, [section], {section.section_id: sents}


def test_record_id_helpers():
    assert sentence_id_for("Same  TEXT ") == sentence_id_for("same text")
    assert normalize_sentence("  A\n B ") == "a b"
    assert page_id_for("o/n", "a.html") != page_id_for("o/n", "b.html")
    assert section_id_for("pg", ("t", "h"), 0) != section_id_for("pg", ("t", "h"), 1)


def test_record_validation():
    with pytest.raises(ValueError, match="owner/name"):
        ProjectRef(oss_domain="d", repo_id="noslash", docs_url="https://x.io/", stars=1)
    with pytest.raises(ValueError, match="http"):
        ProjectRef(oss_domain="d", repo_id="a/b", docs_url="ftp://x.io/", stars=1)
    with pytest.raises(ValueError, match="stars"):
        ProjectRef(oss_domain="d", repo_id="a/b", docs_url="https://x.io/", stars=-1)
    assert PROJ.project_id == "o__name"
    with pytest.raises(ValueError):
        Section(section_id="s", page_id="p", heading_path=(), text="x")
    with pytest.raises(ValueError):
        Sentence(sentence_id="s", section_id="c", text="   ")


def test_builder_dedups_sentences_corpus_wide():
    builder = CorpusBuilder()
    p1, s1, by1 = make_page("a.html", "Shared sentence here.|Unique to a.")
    p2, s2, by2 = make_page("b.html", "Shared sentence here.|Unique to b.")
    builder.add_page(p1, s1, by1)
    builder.add_page(p2, s2, by2)
    store = builder.seal()
    texts = [s.text for s in store.sentences]
    assert texts.count("Shared sentence here.") == 1
    # first occurrence keeps its section attribution
    shared = next(s for s in store.sentences if s.text == "Shared sentence here.")
    assert shared.section_id == s1[0].section_id
    # the second section still lists the shared id
    assert shared.sentence_id in s2[0].sentence_ids
    with pytest.raises(CorpusIntegrityError, match="sealed"):
        builder.add_page(p1, s1, by1)


def test_store_lookups():
    builder = CorpusBuilder()
    other = ProjectRef(oss_domain="networking", repo_id="x/y",
                       docs_url="https://y.rtd.io/en/latest/", stars=1)
    p1, s1, by1 = make_page("a.html", "One fact.")
    p2, s2, by2 = make_page("n.html", "Net fact.", project=other)
    builder.add_page(p1, s1, by1)
    builder.add_page(p2, s2, by2)
    store = builder.seal()

    assert store.domains == ("database", "networking")
    assert store.section(s1[0].section_id) == s1[0]
    assert store.page(p1.page_id).repo_id == "o/name"
    assert store.domain_of_section(s2[0].section_id) == "networking"
    assert [s.section_id for s in store.sections_of_domain("database")] == [s1[0].section_id]
    got = store.sentences_of_section(s1[0].section_id)
    assert [s.text for s in got] == ["One fact."]


def test_integrity_errors():
    page, sections, by = make_page()
    with pytest.raises(CorpusIntegrityError, match="unknown page"):
        CorpusStore(sections=tuple(sections), sentences=tuple(by[sections[0].section_id]), pages=())
    dup = by[sections[0].section_id][0]
    with pytest.raises(CorpusIntegrityError, match="duplicate sentence"):
        builder = CorpusBuilder()
        builder.add_page(page, sections, by)
        store = builder.seal()
        CorpusStore(sections=store.sections, sentences=store.sentences + (dup,), pages=store.pages)


def test_save_load_round_trip(tmp_path):
    builder = CorpusBuilder()
    for path in ("a.html", "b.html"):
        builder.add_page(*make_page(path, f"Fact for {path}.|Second {path} fact."))
    store = builder.seal()
    save_corpus(store, tmp_path / "c")
    again = load_corpus(tmp_path / "c")
    assert again.sections == store.sections
    assert again.sentences == store.sentences
    assert again.pages == store.pages


def test_load_rejects_bad_version_and_missing_files(tmp_path):
    builder = CorpusBuilder()
    builder.add_page(*make_page())
    save_corpus(builder.seal(), tmp_path / "c")
    manifest = (tmp_path / "c" / "manifest.json")
    manifest.write_text(manifest.read_text().replace('"format_version": 1', '"format_version": 99'))
    with pytest.raises(CorpusVersionError):
        load_corpus(tmp_path / "c")
    with pytest.raises(CorpusFormatError):
        load_corpus(tmp_path / "nowhere")


def test_fixture_corpus_counts_match_manifest(fixture_corpus_dir, fixture_corpus):
    import json

    manifest = json.loads((fixture_corpus_dir / "manifest.json").read_text())
    assert manifest["n_pages"] == len(fixture_corpus.pages)
    assert manifest["n_sections"] == len(fixture_corpus.sections)
    assert manifest["n_sentences"] == len(fixture_corpus.sentences)
    assert list(manifest["domains"]) == list(fixture_corpus.domains)
