"""Corpus: storage, tokenization, per-domain term statistics."""
from docadopt.corpus.index import (
    DomainIndex,
    INDEX_FORMAT_VERSION,
    build_index,
    load_index,
    save_index,
    tech_score,
    top_terms,
)
from docadopt.corpus.stopwords import STOP_WORDS
from docadopt.corpus.store import (
    CorpusBuilder,
    CorpusFormatError,
    CorpusIntegrityError,
    CorpusStore,
    CorpusVersionError,
    FORMAT_VERSION,
    PageMeta,
    load_corpus,
    save_corpus,
)
from docadopt.corpus.tokenize import TokenizerConfig, tokenize, word_tokens

__all__ = [
    "CorpusBuilder",
    "CorpusFormatError",
    "CorpusIntegrityError",
    "CorpusStore",
    "CorpusVersionError",
    "DomainIndex",
    "FORMAT_VERSION",
    "INDEX_FORMAT_VERSION",
    "PageMeta",
    "STOP_WORDS",
    "TokenizerConfig",
    "build_index",
    "load_corpus",
    "load_index",
    "save_corpus",
    "save_index",
    "tech_score",
    "tokenize",
    "top_terms",
    "word_tokens",
]
