"""Tokenization shared by the corpus index and the topic vocabulary.

One tokenizer for everything that counts terms, so index statistics and
topic representations agree on what a "term" is.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from docadopt.corpus.stopwords import STOP_WORDS

# Word chars plus internal hyphens/dots, so "f1-score" and "3.8" survive
# as single tokens while trailing punctuation is shed.
_TOKEN_RE = re.compile(r"\w+(?:[-.]\w+)*", re.UNICODE)


@dataclass(frozen=True)
class TokenizerConfig:
    """Controls token stream construction.

    ngram_len produces all n-grams from length 1 up to ngram_len, built
    after stop-word removal. Stop-word filtering applies to unigrams only;
    an n-gram keeps its surviving words joined by a single space.
    """

    ngram_len: int = 1
    stopwords_enabled: bool = True

    def __post_init__(self) -> None:
        if self.ngram_len < 1:
            raise ValueError(f"ngram_len must be >= 1, got {self.ngram_len}")


def word_tokens(text: str) -> list[str]:
    """Lowercased word tokens of text, without any filtering."""
    return _TOKEN_RE.findall(text.lower())


def tokenize(text: str, config: TokenizerConfig | None = None) -> list[str]:
    """Token stream of text under config (defaults to unigrams, stops removed)."""
    cfg = config or TokenizerConfig()
    words = word_tokens(text)
    if cfg.stopwords_enabled:
        words = [w for w in words if w not in STOP_WORDS]
    if cfg.ngram_len == 1:
        return words
    out: list[str] = []
    for n in range(1, cfg.ngram_len + 1):
        for i in range(len(words) - n + 1):
            out.append(" ".join(words[i : i + n]))
    return out
