"""Ingestion: project discovery, site mirroring, section extraction."""
from docadopt.ingest.discover import (
    DocsHostResolver,
    GatewayUnreachable,
    GithubSearchClient,
    QUERY_TEMPLATE,
    ReadTheDocsResolver,
    RepoHit,
    SearchClient,
    discover_projects,
)
from docadopt.ingest.htmldoc import Element, parse_html
from docadopt.ingest.mirror import (
    FetchClient,
    FetchResult,
    HttpxFetchClient,
    MirrorError,
    MirrorManifest,
    MirrorPolicy,
    load_manifest,
    mirror_docs,
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
from docadopt.ingest.sections import (
    CODE_PLACEHOLDER,
    extract_sections,
    is_excluded,
    sentences_of,
)
from docadopt.ingest.sentences import split_sentences

__all__ = [
    "CODE_PLACEHOLDER",
    "DocsHostResolver",
    "Element",
    "FetchClient",
    "FetchResult",
    "GatewayUnreachable",
    "GithubSearchClient",
    "HttpxFetchClient",
    "MirrorError",
    "MirrorManifest",
    "MirrorPolicy",
    "Page",
    "ProjectRef",
    "QUERY_TEMPLATE",
    "ReadTheDocsResolver",
    "RepoHit",
    "SearchClient",
    "Section",
    "Sentence",
    "discover_projects",
    "extract_sections",
    "is_excluded",
    "load_manifest",
    "mirror_docs",
    "normalize_sentence",
    "page_id_for",
    "parse_html",
    "section_id_for",
    "sentence_id_for",
    "sentences_of",
    "split_sentences",
]
