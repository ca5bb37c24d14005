"""Per-domain term statistics and domain-specific term scoring.

A term scores high in a domain when it is frequent there, spread across
many of the domain's sections, and absent from most other domains. Terms
present in every domain score exactly zero.
"""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from docadopt.corpus.store import CorpusFormatError, CorpusStore, CorpusVersionError
from docadopt.corpus.tokenize import TokenizerConfig, tokenize

INDEX_FORMAT_VERSION = 1

log = logging.getLogger(__name__)


@dataclass
class DomainIndex:
    """Term statistics grouped by OSS domain.

    tf[d][t]: total occurrences of t in domain d.
    df[d][t]: number of d's sections containing t.
    n_sections[d]: section count of domain d.
    Only domains with at least one section participate.
    """

    tf: dict[str, dict[str, int]]
    df: dict[str, dict[str, int]]
    n_sections: dict[str, int]
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)

    _df_dom: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if set(self.tf) != set(self.df) or set(self.tf) != set(self.n_sections):
            raise ValueError("tf, df and n_sections must cover the same domains")
        for d, n in self.n_sections.items():
            if n < 1:
                raise ValueError(f"domain {d!r} has no sections")
        self._df_dom = Counter()
        for terms in self.df.values():
            for t in terms:
                self._df_dom[t] += 1

    @property
    def domains(self) -> tuple[str, ...]:
        return tuple(sorted(self.tf))

    @property
    def n_domains(self) -> int:
        return len(self.tf)

    def df_dom(self, term: str) -> int:
        return self._df_dom.get(term, 0)


def build_index(store: CorpusStore, tokenizer: TokenizerConfig | None = None) -> DomainIndex:
    """Index a sealed corpus. Domains without sections are skipped with a warning."""
    cfg = tokenizer or TokenizerConfig()
    tf: dict[str, dict[str, int]] = {}
    df: dict[str, dict[str, int]] = {}
    n_sections: dict[str, int] = {}
    for domain in store.domains:
        sections = store.sections_of_domain(domain)
        if not sections:
            log.warning("domain %r has no sections; excluded from the index", domain)
            continue
        d_tf: Counter = Counter()
        d_df: Counter = Counter()
        for section in sections:
            counts = Counter(tokenize(section.text, cfg))
            d_tf.update(counts)
            d_df.update(counts.keys())
        tf[domain] = dict(d_tf)
        df[domain] = dict(d_df)
        n_sections[domain] = len(sections)
    if not tf:
        raise ValueError("corpus has no domains with sections")
    return DomainIndex(tf=tf, df=df, n_sections=n_sections, tokenizer=cfg)


def tech_score(index: DomainIndex, term: str, oss_domain: str) -> float:
    """Domain-specificity score of a term.

    (1 + ln tf) * (df / n_sections) * ln(D / df_dom); zero when the term
    does not occur in the domain. A term occurring in every domain scores
    zero through the last factor.
    """
    if oss_domain not in index.tf:
        raise KeyError(f"unknown domain: {oss_domain!r}")
    tf = index.tf[oss_domain].get(term, 0)
    if tf < 1:
        return 0.0
    df = index.df[oss_domain][term]
    n = index.n_sections[oss_domain]
    spread = df / n
    rarity = math.log(index.n_domains / index.df_dom(term))
    return (1.0 + math.log(tf)) * spread * rarity


def top_terms(
    index: DomainIndex, paragraph: str, oss_domain: str, k: int = 10
) -> list[tuple[str, float]]:
    """The k highest-scoring terms of a paragraph for one domain.

    Zero-scoring terms are dropped; ties break alphabetically so results
    are stable.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    seen = dict.fromkeys(tokenize(paragraph, index.tokenizer))
    scored = [(t, tech_score(index, t, oss_domain)) for t in seen]
    scored = [(t, s) for t, s in scored if s > 0]
    scored.sort(key=lambda ts: (-ts[1], ts[0]))
    return scored[:k]


def save_index(index: DomainIndex, path: str | Path) -> None:
    payload = {
        "format_version": INDEX_FORMAT_VERSION,
        "tokenizer": {
            "ngram_len": index.tokenizer.ngram_len,
            "stopwords_enabled": index.tokenizer.stopwords_enabled,
        },
        "tf": index.tf,
        "df": index.df,
        "n_sections": index.n_sections,
    }
    Path(path).write_text(json.dumps(payload))


def load_index(path: str | Path) -> DomainIndex:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusFormatError(f"cannot read index at {path}: {exc}") from exc
    version = payload.get("format_version")
    if version != INDEX_FORMAT_VERSION:
        raise CorpusVersionError(
            f"index format version {version} is not supported "
            f"(this build reads version {INDEX_FORMAT_VERSION})"
        )
    tok = payload["tokenizer"]
    return DomainIndex(
        tf={d: dict(v) for d, v in payload["tf"].items()},
        df={d: dict(v) for d, v in payload["df"].items()},
        n_sections=dict(payload["n_sections"]),
        tokenizer=TokenizerConfig(
            ngram_len=tok["ngram_len"], stopwords_enabled=tok["stopwords_enabled"]
        ),
    )
