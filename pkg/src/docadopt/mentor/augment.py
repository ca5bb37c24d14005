"""Technical-term augmentation for documentation paragraphs.

Detection finds domain-specific terms with the corpus index, an LLM expands
the list with terms the index missed, and a second LLM pass explains every
term. All LLM failures degrade gracefully: the caller always gets a complete
Augmentation plus a flag, never an exception from the provider.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources

from ..corpus.index import DomainIndex, top_terms
from .llm import LlmError, LlmProvider, ReplayLlmProvider

TEMPLATE_VERSION = "v1"
DEFAULT_DETECT_K = 5
UNAVAILABLE = "unavailable"

TERM_SOURCES = ("tfidf", "llm")


def _load_template(name: str) -> str:
    ref = resources.files("docadopt.mentor.templates") / f"{name}_{TEMPLATE_VERSION}.txt"
    return ref.read_text(encoding="utf-8")


def occurs_verbatim(term: str, paragraph: str) -> bool:
    """Case-insensitive containment on token boundaries.

    Whitespace inside multi-word terms matches any whitespace run, so a term
    split across a line break in the paragraph still counts.
    """
    needle = r"\s+".join(re.escape(part) for part in term.split())
    if not needle:
        return False
    return re.search(rf"(?<!\w){needle}(?!\w)", paragraph, re.IGNORECASE) is not None


@dataclass(frozen=True)
class TechnicalTerm:
    term: str
    source: str
    score: float = 0.0
    explanation: str = ""
    examples: tuple[str, ...] = ()
    references: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.term.strip():
            raise ValueError("term must be non-empty")
        if self.source not in TERM_SOURCES:
            raise ValueError(f"source must be one of {TERM_SOURCES}, got {self.source!r}")
        if self.source == "llm" and self.score != 0.0:
            raise ValueError("llm-sourced terms carry no index score")
        object.__setattr__(self, "examples", tuple(self.examples))
        object.__setattr__(self, "references", tuple(self.references))

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "source": self.source,
            "score": self.score,
            "explanation": self.explanation,
            "examples": list(self.examples),
            "references": list(self.references),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TechnicalTerm":
        return cls(
            term=data["term"],
            source=data["source"],
            score=float(data["score"]),
            explanation=data.get("explanation", ""),
            examples=tuple(data.get("examples", ())),
            references=tuple(data.get("references", ())),
        )


@dataclass(frozen=True)
class PromptExchange:
    """One recorded provider call; ok=False means the call failed."""

    purpose: str
    prompt: str
    response: str
    ok: bool = True

    def to_dict(self) -> dict:
        return {"purpose": self.purpose, "prompt": self.prompt, "response": self.response, "ok": self.ok}

    @classmethod
    def from_dict(cls, data: dict) -> "PromptExchange":
        return cls(data["purpose"], data["prompt"], data["response"], bool(data["ok"]))


@dataclass(frozen=True)
class Augmentation:
    paragraph: str
    oss_domain: str
    terms: tuple[TechnicalTerm, ...]
    prompt_log: tuple[PromptExchange, ...] = ()
    degraded: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "prompt_log", tuple(self.prompt_log))
        for t in self.terms:
            if not occurs_verbatim(t.term, self.paragraph):
                raise ValueError(f"term {t.term!r} does not occur verbatim in the paragraph")
        lowered = [t.term.lower() for t in self.terms]
        if len(set(lowered)) != len(lowered):
            raise ValueError("duplicate terms in augmentation")

    def to_dict(self) -> dict:
        return {
            "paragraph": self.paragraph,
            "oss_domain": self.oss_domain,
            "terms": [t.to_dict() for t in self.terms],
            "prompt_log": [x.to_dict() for x in self.prompt_log],
            "degraded": self.degraded,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Augmentation":
        return cls(
            paragraph=data["paragraph"],
            oss_domain=data["oss_domain"],
            terms=tuple(TechnicalTerm.from_dict(t) for t in data["terms"]),
            prompt_log=tuple(PromptExchange.from_dict(x) for x in data["prompt_log"]),
            degraded=bool(data["degraded"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "Augmentation":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ExpandResult:
    terms: tuple[TechnicalTerm, ...]
    degraded: bool
    exchanges: tuple[PromptExchange, ...] = field(default=())


def detect(paragraph: str, oss_domain: str, index: DomainIndex, k: int = DEFAULT_DETECT_K) -> list[TechnicalTerm]:
    """Top k index terms of the paragraph, as tfidf-sourced TechnicalTerms."""
    if not paragraph.strip():
        raise ValueError("paragraph must be non-empty")
    scored = top_terms(index, paragraph, oss_domain, k)
    return [TechnicalTerm(term=t, source="tfidf", score=s) for t, s in scored]


def _render(template: str, paragraph: str, oss_domain: str, terms: list[str]) -> str:
    return template.format(
        domain=oss_domain,
        paragraph=paragraph,
        terms="\n".join(terms) if terms else "(none)",
    )


_BULLET_RE = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*")


def _parse_term_lines(response: str) -> list[str]:
    terms = []
    for line in response.splitlines():
        term = _BULLET_RE.sub("", line).strip()
        if term and term.lower() != "(none)":
            terms.append(term)
    return terms


def expand(
    paragraph: str,
    detected: list[TechnicalTerm],
    llm: LlmProvider,
    oss_domain: str,
) -> ExpandResult:
    """Ask the LLM for terms the index missed.

    A proposed term is kept only if it occurs verbatim in the paragraph and
    was not already detected; everything else is dropped silently. Provider
    failure returns the detected list unchanged with the degraded flag set.
    """
    prompt = _render(_load_template("expand"), paragraph, oss_domain, [t.term for t in detected])
    try:
        response = llm.complete(prompt)
    except LlmError as exc:
        exchange = PromptExchange("expand", prompt, str(exc), ok=False)
        return ExpandResult(tuple(detected), degraded=True, exchanges=(exchange,))

    seen = {t.term.lower() for t in detected}
    accepted = list(detected)
    for term in _parse_term_lines(response):
        if term.lower() in seen or not occurs_verbatim(term, paragraph):
            continue
        seen.add(term.lower())
        accepted.append(TechnicalTerm(term=term, source="llm"))
    exchange = PromptExchange("expand", prompt, response, ok=True)
    return ExpandResult(tuple(accepted), degraded=False, exchanges=(exchange,))


_BLOCK_SPLIT_RE = re.compile(r"^\s*-{3,}\s*$", re.MULTILINE)
_KEYS = ("TERM", "EXPLANATION", "EXAMPLES", "REFERENCES")


def _parse_explanation_blocks(response: str) -> dict[str, dict[str, str]]:
    """Map lowercased term -> parsed fields; malformed blocks are skipped."""
    parsed: dict[str, dict[str, str]] = {}
    for block in _BLOCK_SPLIT_RE.split(response):
        fields: dict[str, str] = {}
        current: str | None = None
        for line in block.splitlines():
            head, sep, rest = line.partition(":")
            key = head.strip().upper()
            if sep and key in _KEYS:
                current = key
                fields[key] = rest.strip()
            elif current and line.strip():
                fields[current] = (fields[current] + " " + line.strip()).strip()
        term = fields.get("TERM", "").strip()
        if term and fields.get("EXPLANATION", "").strip():
            parsed.setdefault(term.lower(), fields)
    return parsed


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in value.split(";") if p.strip())


def explain(
    paragraph: str,
    terms: tuple[TechnicalTerm, ...] | list[TechnicalTerm],
    llm: LlmProvider,
    oss_domain: str,
    prior_exchanges: tuple[PromptExchange, ...] = (),
    prior_degraded: bool = False,
) -> Augmentation:
    """Attach an explanation to every term.

    Total on the terms it is given: a provider failure or an unparseable
    block yields explanation "unavailable" and the degraded flag, never an
    exception.
    """
    terms = tuple(terms)
    if not terms:
        raise ValueError("explain requires at least one term")
    prompt = _render(_load_template("explain"), paragraph, oss_domain, [t.term for t in terms])
    degraded = prior_degraded
    try:
        response = llm.complete(prompt)
        exchange = PromptExchange("explain", prompt, response, ok=True)
        blocks = _parse_explanation_blocks(response)
    except LlmError as exc:
        exchange = PromptExchange("explain", prompt, str(exc), ok=False)
        blocks = {}
        degraded = True

    explained = []
    for t in terms:
        fields = blocks.get(t.term.lower())
        if fields is None:
            degraded = True
            explained.append(replace(t, explanation=UNAVAILABLE))
            continue
        explained.append(
            replace(
                t,
                explanation=fields["EXPLANATION"],
                examples=_split_list(fields.get("EXAMPLES", "")),
                references=_split_list(fields.get("REFERENCES", "")),
            )
        )
    return Augmentation(
        paragraph=paragraph,
        oss_domain=oss_domain,
        terms=tuple(explained),
        prompt_log=tuple(prior_exchanges) + (exchange,),
        degraded=degraded,
    )


def augment_from_detected(
    paragraph: str,
    oss_domain: str,
    detected: list[TechnicalTerm],
    llm: LlmProvider,
) -> Augmentation:
    """Expand then explain, starting from an already-detected term list."""
    expanded = expand(paragraph, detected, llm, oss_domain)
    if not expanded.terms:
        return Augmentation(
            paragraph=paragraph,
            oss_domain=oss_domain,
            terms=(),
            prompt_log=expanded.exchanges,
            degraded=expanded.degraded,
        )
    return explain(
        paragraph,
        expanded.terms,
        llm,
        oss_domain,
        prior_exchanges=expanded.exchanges,
        prior_degraded=expanded.degraded,
    )


def augment(
    paragraph: str,
    oss_domain: str,
    index: DomainIndex,
    llm: LlmProvider,
    k: int = DEFAULT_DETECT_K,
) -> Augmentation:
    """Full pipeline: detect, expand, explain."""
    detected = detect(paragraph, oss_domain, index, k)
    return augment_from_detected(paragraph, oss_domain, detected, llm)


def replay(augmentation: Augmentation) -> Augmentation:
    """Re-run the pipeline against the recorded prompt log.

    Failed exchanges are replayed as failures. The result must equal the
    original augmentation; a mismatch means the artifact was edited or the
    pipeline changed since it was recorded.
    """
    recorded = {x.prompt: x.response for x in augmentation.prompt_log if x.ok}
    failures = {x.prompt: x.response for x in augmentation.prompt_log if not x.ok}
    provider = _ReplayOrFail(recorded, failures)
    detected = [
        replace(t, explanation="", examples=(), references=())
        for t in augmentation.terms
        if t.source == "tfidf"
    ]
    return augment_from_detected(augmentation.paragraph, augmentation.oss_domain, detected, provider)


class _ReplayOrFail(ReplayLlmProvider):
    """Replay provider that re-raises recorded failures verbatim.

    Raising with the recorded error text makes degraded-mode runs replay to
    an identical prompt log.
    """

    def __init__(self, exchanges: dict[str, str], failures: dict[str, str]):
        super().__init__(exchanges)
        self._failures = dict(failures)

    def complete(self, prompt: str) -> str:
        if prompt in self._failures:
            raise LlmError(self._failures[prompt])
        return super().complete(prompt)
