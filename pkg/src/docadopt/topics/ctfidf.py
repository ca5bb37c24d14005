"""Class-based TF-IDF over topic term counts."""
from __future__ import annotations

import numpy as np


def ctfidf(term_topic_counts: np.ndarray, reduce_frequent_words: bool = True) -> np.ndarray:
    """Weight matrix W over a topics x terms count matrix.

    W(t, c) = g(tf(t, c)) * ln(1 + A / f(t)) with f(t) the total count of
    term t across all topics and A the mean total term count per topic.
    g is the identity, or the square root of the row-L1-normalized counts
    when reduce_frequent_words is on.
    """
    counts = np.asarray(term_topic_counts, dtype=np.float64)
    if counts.ndim != 2:
        raise ValueError(f"counts must be 2-dimensional, got shape {counts.shape}")
    if counts.size == 0:
        raise ValueError("counts matrix is empty")
    if np.any(counts < 0):
        raise ValueError("counts must be non-negative")
    if np.any(counts != np.floor(counts)):
        raise ValueError("counts must be integers")

    row_totals = counts.sum(axis=1)
    zero_rows = np.flatnonzero(row_totals == 0)
    if zero_rows.size:
        raise ValueError(f"topic row {zero_rows[0]} is all zeros")

    if reduce_frequent_words:
        tf = np.sqrt(counts / row_totals[:, None])
    else:
        tf = counts

    f = counts.sum(axis=0)
    a = row_totals.mean()
    # unused vocabulary columns (f=0) get weight 0 regardless of idf
    with np.errstate(divide="ignore"):
        idf = np.where(f > 0, np.log1p(a / np.where(f > 0, f, 1.0)), 0.0)
    return tf * idf[None, :]
