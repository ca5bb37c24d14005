"""Rule-based sentence splitting for documentation prose."""
from __future__ import annotations

import re

# Common abbreviations that end with a period mid-sentence. Compared
# lowercased, without the trailing period.
_ABBREVIATIONS = frozenset({
    "e.g", "i.e", "etc", "vs", "cf", "al", "ca", "approx", "resp",
    "dr", "mr", "mrs", "ms", "prof", "jr", "sr", "st",
    "fig", "eq", "sec", "ch", "vol", "no", "pp", "rev", "ver",
    "inc", "ltd", "co", "corp", "dept", "est", "misc", "incl",
})

_BOUNDARY_RE = re.compile(r"([.!?]+)(\s+)")
_OPENERS = "\"'([`“‘"


def _last_word(text: str) -> str:
    m = re.search(r"(\S+)\s*\Z", text)
    return m.group(1) if m else ""


def split_sentences(text: str) -> list[str]:
    """Split prose into sentences.

    Splits on ., !, ? followed by whitespace and an upper-case letter,
    digit, or opening quote/bracket. Periods after known abbreviations and
    single-letter initials do not split. Sentences are substrings of the
    input, so their concatenation recovers the input up to the whitespace
    between them.
    """
    if not text or not text.strip():
        return []
    sentences: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        punct_end = m.end(1)
        next_start = m.end()
        if next_start >= len(text):
            break
        follower = text[next_start]
        if not (follower.isupper() or follower.isdigit() or follower in _OPENERS):
            continue
        if m.group(1) == ".":
            word = _last_word(text[: m.start(1)]).lstrip("([\"'`“‘").lower()
            if word in _ABBREVIATIONS:
                continue
            # single-letter initials, as in "J. Smith"
            if len(word) == 1 and word.isalpha():
                continue
        piece = text[start:punct_end].strip()
        if piece:
            sentences.append(piece)
        start = next_start
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
