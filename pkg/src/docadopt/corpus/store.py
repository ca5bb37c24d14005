"""Corpus assembly and on-disk format.

A corpus is sections plus corpus-wide deduplicated sentences, with enough
provenance to answer "which project and page did this come from". On disk
it is a directory: manifest.json, sections.jsonl, sentences.jsonl.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from docadopt.ingest.records import Page, ProjectRef, Section, Sentence

FORMAT_VERSION = 1


class CorpusFormatError(ValueError):
    """The on-disk corpus is malformed or truncated."""


class CorpusVersionError(CorpusFormatError):
    """The on-disk corpus was written by an incompatible format version."""


class CorpusIntegrityError(ValueError):
    """In-memory corpus invariants are violated."""


@dataclass(frozen=True)
class PageMeta:
    """Provenance of one page, without its raw HTML."""

    page_id: str
    repo_id: str
    oss_domain: str
    docs_url: str
    stars: int
    path: str
    title: str


@dataclass
class CorpusStore:
    """Sealed, validated corpus. Build one through CorpusBuilder."""

    sections: tuple[Section, ...]
    sentences: tuple[Sentence, ...]
    pages: tuple[PageMeta, ...]

    _by_section: dict[str, Section] = field(init=False, repr=False)
    _by_sentence: dict[str, Sentence] = field(init=False, repr=False)
    _by_page: dict[str, PageMeta] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._by_section = {s.section_id: s for s in self.sections}
        self._by_sentence = {s.sentence_id: s for s in self.sentences}
        self._by_page = {p.page_id: p for p in self.pages}
        self._validate()

    def _validate(self) -> None:
        if len(self._by_section) != len(self.sections):
            raise CorpusIntegrityError("duplicate section_id in corpus")
        if len(self._by_sentence) != len(self.sentences):
            raise CorpusIntegrityError("duplicate sentence_id in corpus")
        if len(self._by_page) != len(self.pages):
            raise CorpusIntegrityError("duplicate page_id in corpus")
        for section in self.sections:
            if section.page_id not in self._by_page:
                raise CorpusIntegrityError(
                    f"section {section.section_id} references unknown page {section.page_id}"
                )
            for sid in section.sentence_ids:
                if sid not in self._by_sentence:
                    raise CorpusIntegrityError(
                        f"section {section.section_id} references unknown sentence {sid}"
                    )
        for sentence in self.sentences:
            if sentence.section_id not in self._by_section:
                raise CorpusIntegrityError(
                    f"sentence {sentence.sentence_id} references unknown section"
                )

    @property
    def domains(self) -> tuple[str, ...]:
        return tuple(sorted({p.oss_domain for p in self.pages}))

    def section(self, section_id: str) -> Section:
        return self._by_section[section_id]

    def sentence(self, sentence_id: str) -> Sentence:
        return self._by_sentence[sentence_id]

    def page(self, page_id: str) -> PageMeta:
        return self._by_page[page_id]

    def domain_of_section(self, section_id: str) -> str:
        return self._by_page[self.section(section_id).page_id].oss_domain

    def sections_of_domain(self, domain: str) -> list[Section]:
        return [
            s for s in self.sections
            if self._by_page[s.page_id].oss_domain == domain
        ]

    def sentences_of_section(self, section_id: str) -> list[Sentence]:
        section = self.section(section_id)
        return [self._by_sentence[sid] for sid in section.sentence_ids]


class CorpusBuilder:
    """Accumulates extraction output; seal() validates and freezes it.

    Sentences are deduplicated corpus-wide by normalized text: the first
    occurrence wins and keeps its section attribution; later sections
    still list the shared sentence_id.
    """

    def __init__(self) -> None:
        self._sections: list[Section] = []
        self._sentences: dict[str, Sentence] = {}
        self._pages: dict[str, PageMeta] = {}
        self._sealed = False

    def add_page(
        self, page: Page, sections: list[Section], sentences_by_section: dict[str, list[Sentence]]
    ) -> None:
        if self._sealed:
            raise CorpusIntegrityError("builder is sealed")
        project: ProjectRef = page.project
        self._pages[page.page_id] = PageMeta(
            page_id=page.page_id,
            repo_id=project.repo_id,
            oss_domain=project.oss_domain,
            docs_url=project.docs_url,
            stars=project.stars,
            path=page.path,
            title=page.title,
        )
        for section in sections:
            self._sections.append(section)
            for sentence in sentences_by_section.get(section.section_id, []):
                if sentence.sentence_id not in self._sentences:
                    self._sentences[sentence.sentence_id] = sentence

    def seal(self) -> CorpusStore:
        self._sealed = True
        return CorpusStore(
            sections=tuple(self._sections),
            sentences=tuple(self._sentences.values()),
            pages=tuple(self._pages.values()),
        )


def _section_to_json(s: Section) -> dict:
    return {
        "section_id": s.section_id,
        "page_id": s.page_id,
        "heading_path": list(s.heading_path),
        "text": s.text,
        "sentence_ids": list(s.sentence_ids),
    }


def _page_to_json(p: PageMeta) -> dict:
    return {
        "page_id": p.page_id,
        "repo_id": p.repo_id,
        "oss_domain": p.oss_domain,
        "docs_url": p.docs_url,
        "stars": p.stars,
        "path": p.path,
        "title": p.title,
    }


def save_corpus(store: CorpusStore, path: str | Path) -> None:
    """Write the corpus directory. Overwrites existing files in place."""
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "format_version": FORMAT_VERSION,
        "domains": list(store.domains),
        "n_pages": len(store.pages),
        "n_sections": len(store.sections),
        "n_sentences": len(store.sentences),
        "pages": [_page_to_json(p) for p in store.pages],
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2))
    with (out / "sections.jsonl").open("w") as fh:
        for section in store.sections:
            fh.write(json.dumps(_section_to_json(section)) + "\n")
    with (out / "sentences.jsonl").open("w") as fh:
        for sentence in store.sentences:
            fh.write(
                json.dumps(
                    {
                        "sentence_id": sentence.sentence_id,
                        "section_id": sentence.section_id,
                        "text": sentence.text,
                    }
                )
                + "\n"
            )


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    try:
        with path.open() as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rows.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise CorpusFormatError(
                        f"{path.name}:{lineno} is not valid JSON (truncated file?)"
                    ) from exc
    except OSError as exc:
        raise CorpusFormatError(f"cannot read {path}: {exc}") from exc
    return rows


def load_corpus(path: str | Path) -> CorpusStore:
    """Load a corpus directory; load(save(c)) reproduces c exactly."""
    root = Path(path)
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        raise CorpusFormatError(f"no manifest.json under {root}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"manifest.json is not valid JSON: {exc}") from exc
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise CorpusVersionError(
            f"corpus format version {version} is not supported "
            f"(this build reads version {FORMAT_VERSION})"
        )
    try:
        pages = tuple(
            PageMeta(
                page_id=p["page_id"],
                repo_id=p["repo_id"],
                oss_domain=p["oss_domain"],
                docs_url=p["docs_url"],
                stars=p["stars"],
                path=p["path"],
                title=p["title"],
            )
            for p in manifest["pages"]
        )
        sections = tuple(
            Section(
                section_id=row["section_id"],
                page_id=row["page_id"],
                heading_path=tuple(row["heading_path"]),
                text=row["text"],
                sentence_ids=tuple(row["sentence_ids"]),
            )
            for row in _read_jsonl(root / "sections.jsonl")
        )
        sentences = tuple(
            Sentence(
                sentence_id=row["sentence_id"],
                section_id=row["section_id"],
                text=row["text"],
            )
            for row in _read_jsonl(root / "sentences.jsonl")
        )
    except KeyError as exc:
        raise CorpusFormatError(f"corpus record is missing field {exc}") from exc
    store = CorpusStore(sections=sections, sentences=sentences, pages=pages)
    expected = (manifest["n_pages"], manifest["n_sections"], manifest["n_sentences"])
    actual = (len(pages), len(sections), len(sentences))
    if expected != actual:
        raise CorpusFormatError(
            f"manifest counts {expected} do not match records {actual} (truncated file?)"
        )
    return store
