"""Record types produced by the ingestion pipeline."""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from urllib.parse import urlparse


def _short_hash(*parts: str) -> str:
    joined = "\x1f".join(parts)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:16]


def normalize_sentence(text: str) -> str:
    """Canonical form used for deduplication: lowercase, whitespace collapsed."""
    return re.sub(r"\s+", " ", text.strip().lower())


def sentence_id_for(text: str) -> str:
    return "snt-" + _short_hash(normalize_sentence(text))


def page_id_for(repo_id: str, path: str) -> str:
    return "pg-" + _short_hash(repo_id, path)


def section_id_for(page_id: str, heading_path: tuple[str, ...], ordinal: int) -> str:
    return "sec-" + _short_hash(page_id, "\x1e".join(heading_path), str(ordinal))


@dataclass(frozen=True)
class ProjectRef:
    """A discovered OSS project and where its documentation lives."""

    oss_domain: str
    repo_id: str
    docs_url: str
    stars: int

    def __post_init__(self) -> None:
        if not self.repo_id or "/" not in self.repo_id:
            raise ValueError(f"repo_id must look like owner/name, got {self.repo_id!r}")
        if self.stars < 0:
            raise ValueError(f"stars must be >= 0, got {self.stars}")
        parsed = urlparse(self.docs_url)
        if parsed.scheme not in ("http", "https") or not parsed.netloc:
            raise ValueError(f"docs_url is not a valid http(s) URL: {self.docs_url!r}")
        if not self.oss_domain:
            raise ValueError("oss_domain must be non-empty")

    @property
    def project_id(self) -> str:
        """URL-safe identifier (repo_id with the slash flattened)."""
        return self.repo_id.replace("/", "__")


@dataclass(frozen=True)
class Page:
    """One mirrored documentation page."""

    page_id: str
    project: ProjectRef
    path: str
    title: str

    def __post_init__(self) -> None:
        if not self.page_id:
            raise ValueError("page_id must be non-empty")


@dataclass(frozen=True)
class Section:
    """An innermost documentation section: one heading scope of body text."""

    section_id: str
    page_id: str
    heading_path: tuple[str, ...]
    text: str
    sentence_ids: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.section_id:
            raise ValueError("section_id must be non-empty")
        if not self.heading_path:
            raise ValueError("heading_path must have at least one entry")
        if not self.text.strip():
            raise ValueError("section text must be non-empty")


@dataclass(frozen=True)
class Sentence:
    """A deduplicated sentence; the unit embedded and clustered."""

    sentence_id: str
    section_id: str
    text: str

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("sentence text must be non-empty")
