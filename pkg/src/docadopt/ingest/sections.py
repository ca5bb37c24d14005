"""Innermost-section extraction from documentation pages.

A page is reduced to a linear outline of headings and body text blocks.
Every run of body text between headings becomes one Section whose
heading_path is the page title followed by the open heading chain. Runs
under a heading that has child headings are that heading's preamble; runs
under a leaf heading are its innermost section. Either way each
non-excluded body text node lands in exactly one Section.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from docadopt.ingest.htmldoc import Element, parse_html
from docadopt.ingest.records import (
    Page,
    ProjectRef,
    Section,
    Sentence,
    page_id_for,
    section_id_for,
    sentence_id_for,
)
from docadopt.ingest.sentences import split_sentences

CODE_PLACEHOLDER = "[code]"

_HEADING_TAGS = frozenset({"h1", "h2", "h3", "h4", "h5", "h6"})

# Subtrees that never contribute body text.
EXCLUDED_TAGS = frozenset({
    "script", "style", "head", "template", "noscript", "iframe", "svg",
    "nav", "footer", "aside", "form", "button", "select", "textarea",
    "input", "label",
})
EXCLUDED_ROLES = frozenset({
    "navigation", "contentinfo", "banner", "complementary", "search",
})
# Matched against class and id tokens (lowercased).
EXCLUDED_CLASS_TOKENS = frozenset({
    "sphinxsidebar", "sidebar", "wy-nav-side", "wy-nav-top", "rst-versions",
    "nav", "navigation", "navbar", "related", "breadcrumb", "breadcrumbs",
    "footer", "header", "headerlink", "toc", "toctree", "localtoc",
    "globaltoc", "contents", "sourcelink", "searchbox", "search",
    "topbar", "injected", "ethical-ads", "edit-on-github",
})

# Entering or leaving one of these flushes the current inline text run.
_BLOCK_TAGS = frozenset({
    "p", "div", "section", "article", "main", "body", "html",
    "ul", "ol", "li", "dl", "dt", "dd",
    "table", "thead", "tbody", "tfoot", "tr", "td", "th",
    "blockquote", "figure", "figcaption", "caption", "details", "summary",
    "address", "fieldset", "hr",
})


def is_excluded(el: Element) -> bool:
    """True when the element's subtree is navigation, chrome, or markup noise."""
    if el.tag in EXCLUDED_TAGS:
        return True
    if el.attr("role").lower() in EXCLUDED_ROLES:
        return True
    tokens = {t.lower() for t in el.classes}
    id_attr = el.attr("id").lower()
    if id_attr:
        tokens.add(id_attr)
    return bool(tokens & EXCLUDED_CLASS_TOKENS)


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _visible_text(el: Element) -> str:
    parts: list[str] = []
    for child in el.children:
        if isinstance(child, str):
            parts.append(child)
        elif not is_excluded(child) and child.tag != "pre":
            parts.append(_visible_text(child))
    return "".join(parts)


@dataclass
class _Heading:
    level: int
    text: str


@dataclass
class _Block:
    text: str


def _flush(buf: list[str], events: list) -> None:
    if not buf:
        return
    text = _normalize("".join(buf))
    buf.clear()
    if text:
        events.append(_Block(text))


def _walk(el: Element, events: list, buf: list[str]) -> None:
    for child in el.children:
        if isinstance(child, str):
            buf.append(child)
            continue
        if is_excluded(child):
            continue
        tag = child.tag
        if tag in _HEADING_TAGS:
            _flush(buf, events)
            events.append(_Heading(int(tag[1]), _normalize(_visible_text(child))))
        elif tag == "pre":
            _flush(buf, events)
            events.append(_Block(CODE_PLACEHOLDER))
        elif tag == "br":
            buf.append(" ")
        elif tag in _BLOCK_TAGS:
            _flush(buf, events)
            _walk(child, events, buf)
            _flush(buf, events)
        else:
            _walk(child, events, buf)


def _content_root(root: Element) -> Element:
    finders = [
        lambda e: e.attr("role").lower() == "main",
        lambda e: "document" in e.classes,
        lambda e: "body" in e.classes and e.tag == "div",
        lambda e: e.tag == "main",
        lambda e: e.tag == "article",
    ]
    for pred in finders:
        el = root.find(pred)
        if el is not None:
            return el
    return root.find(lambda e: e.tag == "body") or root


def _page_title(root: Element, fallback: str) -> str:
    title = root.find(lambda e: e.tag == "title")
    if title is not None:
        text = _normalize(title.text())
        if text:
            return text
    h1 = root.find(lambda e: e.tag == "h1")
    if h1 is not None:
        text = _normalize(_visible_text(h1))
        if text:
            return text
    return fallback


def sentences_of(section: Section) -> list[Sentence]:
    """Sentence records of a section, in order, deduplicated within it."""
    out: list[Sentence] = []
    seen: set[str] = set()
    for raw in split_sentences(section.text):
        sid = sentence_id_for(raw)
        if sid in seen:
            continue
        seen.add(sid)
        out.append(Sentence(sentence_id=sid, section_id=section.section_id, text=raw))
    return out


def extract_sections(
    raw_html: bytes | str, *, project: ProjectRef, path: str
) -> tuple[Page, list[Section]]:
    """Extract the Page record and its Sections from one mirrored page.

    Sections appear in document order. A run consisting only of code
    placeholders is dropped; mixed runs keep the placeholder token in
    their text. Pages without any body text yield an empty list.
    """
    root = parse_html(raw_html)
    page = Page(
        page_id=page_id_for(project.repo_id, path),
        project=project,
        path=path,
        title=_page_title(root, fallback=path),
    )

    events: list = []
    buf: list[str] = []
    content = _content_root(root)
    if is_excluded(content):
        return page, []
    _walk(content, events, buf)
    _flush(buf, events)

    sections: list[Section] = []
    stack: list[tuple[int, str]] = []
    pending: list[str] = []

    def flush_run() -> None:
        if not pending:
            return
        texts = list(pending)
        pending.clear()
        if all(t == CODE_PLACEHOLDER for t in texts):
            return
        text = " ".join(texts)
        heading_path = (page.title,) + tuple(t for _, t in stack)
        section_id = section_id_for(page.page_id, heading_path, len(sections))
        sentence_ids = tuple(
            dict.fromkeys(sentence_id_for(s) for s in split_sentences(text))
        )
        sections.append(
            Section(
                section_id=section_id,
                page_id=page.page_id,
                heading_path=heading_path,
                text=text,
                sentence_ids=sentence_ids,
            )
        )

    for ev in events:
        if isinstance(ev, _Heading):
            flush_run()
            while stack and stack[-1][0] >= ev.level:
                stack.pop()
            stack.append((ev.level, ev.text or "(untitled)"))
        else:
            pending.append(ev.text)
    flush_run()
    return page, sections
