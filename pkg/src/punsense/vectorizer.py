"""Section-count semantic vectors and the topicality-reducing sorts.

A sentence becomes a vector of Section counts: each non-stopword word
contributes 1 to every Section its lemma maps to, and each retained
collocation contributes 1 to every Section of its phrase entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import textprep
from .errors import BadPartition

DEFAULT_PARTITION = (8, 8, 8, 10)


@dataclass
class SemanticVector:
    counts: list
    source_words: dict = field(default_factory=dict)  # section id -> contributing lemmas

    def __len__(self):
        return len(self.counts)

    def total(self):
        return sum(self.counts)


def semantic_vector(tokens, collocations, index):
    """Count Section memberships over content words and collocations."""
    n = index.n_sections
    counts = [0] * n
    source_words = {k: [] for k in range(n)}
    for token in tokens:
        if token.pos == "punctuation" or token.is_stopword:
            continue
        for section in sorted(index.lookup_sections(token.lemma or token.surface)):
            counts[section] += 1
            source_words[section].append(token.lemma or token.surface.lower())
    for colloc in collocations:
        for section in sorted(index.lookup_sections(colloc.surface_lemma)):
            counts[section] += 1
            source_words[section].append(colloc.surface_lemma)
    return SemanticVector(counts=counts, source_words=source_words)


def _counts_of(v):
    return list(v.counts) if isinstance(v, SemanticVector) else list(v)


def sort_full(v):
    """Whole vector sorted descending; Section identity is discarded."""
    return sorted(_counts_of(v), reverse=True)


def sort_partitioned(v, partition=DEFAULT_PARTITION):
    """Sort descending within contiguous blocks of the given sizes."""
    counts = _counts_of(v)
    if sum(partition) != len(counts):
        raise BadPartition(
            f"partition {tuple(partition)} sums to {sum(partition)}, vector length is {len(counts)}"
        )
    out = []
    pos = 0
    for size in partition:
        out.extend(sorted(counts[pos : pos + size], reverse=True))
        pos += size
    return out


TRANSFORMS = ("none", "sort_full", "sort_partitioned")


def apply_transform(counts, transform, partition=DEFAULT_PARTITION):
    if transform == "none":
        return list(counts)
    if transform == "sort_full":
        return sort_full(counts)
    if transform == "sort_partitioned":
        return sort_partitioned(counts, partition)
    raise ValueError(f"unknown transform {transform!r}")


class SemanticFieldVectorizer(BaseEstimator, TransformerMixin):
    """Sentence strings -> Section-count feature matrix.

    Stateless apart from its configuration; fit is a no-op kept for
    pipeline compatibility.
    """

    def __init__(
        self,
        index=None,
        transform_name="none",
        partition=DEFAULT_PARTITION,
        stopwords=None,
        lexicon=None,
    ):
        self.index = index
        self.transform_name = transform_name
        self.partition = partition
        self.stopwords = stopwords
        self.lexicon = lexicon

    def fit(self, X, y=None):
        if self.index is None:
            raise ValueError("an index is required; pass index= at construction")
        return self

    def transform(self, X):
        if self.index is None:
            raise ValueError("an index is required; pass index= at construction")
        rows = []
        for text in X:
            sentence = textprep.analyze(
                text, self.index, stopwords=self.stopwords, lexicon=self.lexicon
            )
            vector = semantic_vector(sentence.tokens, sentence.collocations, self.index)
            rows.append(apply_transform(vector.counts, self.transform_name, self.partition))
        return np.asarray(rows, dtype=np.float64)
