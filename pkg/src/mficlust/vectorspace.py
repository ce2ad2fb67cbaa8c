"""Weighted vector-space model: tf, df, idf = ln(M/df) and tf*idf weights."""

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set

from ._validation import check_fraction, check_int
from .exceptions import DomainError, EmptyCorpus, EmptyVocabulary
from .preprocess import TokenizedDocument

__all__ = [
    "Vocabulary",
    "WeightedVector",
    "CorpusMatrix",
    "document_frequencies",
    "build_vocabulary",
    "idf",
    "build_vectors",
    "keyword_set",
]


@dataclass(frozen=True)
class Vocabulary:
    """Retained terms, in lexicographic order, with their document frequency."""

    terms: List[str]
    df: List[int]
    index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index


@dataclass
class WeightedVector:
    """Sparse document vector: raw term counts and their tf*idf weights."""

    doc_id: int
    tf: Dict[int, int] = field(default_factory=dict)
    weights: Dict[int, float] = field(default_factory=dict)

    def __len__(self):
        return len(self.weights)

    def terms(self) -> Set[int]:
        return set(self.weights)


@dataclass
class CorpusMatrix:
    m: int
    vocabulary: Vocabulary
    vectors: List[WeightedVector]

    def __post_init__(self):
        if len(self.vectors) != self.m:
            raise ValueError(f"expected {self.m} vectors, got {len(self.vectors)}")

    def to_dict(self):
        return {
            "m": self.m,
            "terms": list(self.vocabulary.terms),
            "df": list(self.vocabulary.df),
            "vectors": [
                {
                    "doc_id": v.doc_id,
                    "entries": [[t, v.tf[t], v.weights[t]] for t in sorted(v.weights)],
                }
                for v in self.vectors
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_sparse(self):
        """Weights as a scipy CSR matrix of shape (m, n_terms)."""
        from scipy.sparse import csr_matrix

        rows, cols, vals = [], [], []
        for i, v in enumerate(self.vectors):
            for t in sorted(v.weights):
                rows.append(i)
                cols.append(t)
                vals.append(v.weights[t])
        return csr_matrix((vals, (rows, cols)), shape=(self.m, len(self.vocabulary)))


def document_frequencies(docs: Sequence[TokenizedDocument]) -> Counter:
    df = Counter()
    for doc in docs:
        df.update(set(doc.tokens))
    return df


def build_vocabulary(docs: Sequence[TokenizedDocument], df_threshold: float = 0.8) -> Vocabulary:
    """Keep the terms whose document frequency is below ``ceil(df_threshold * M)``.

    Term ids follow lexicographic term order.
    """
    if not docs:
        raise EmptyCorpus("cannot build a vocabulary from zero documents")
    df_threshold = check_fraction(df_threshold, "df_threshold")
    m = len(docs)
    cutoff = math.ceil(df_threshold * m)
    df = document_frequencies(docs)
    kept = sorted(t for t, n in df.items() if n < cutoff)
    if not kept:
        raise EmptyVocabulary(
            f"df_threshold={df_threshold} removed every term "
            f"(M={m}, terms need df < {cutoff})"
        )
    return Vocabulary(kept, [df[t] for t in kept])


def idf(m: int, df_j: int) -> float:
    if df_j < 1 or df_j > m:
        raise DomainError(f"document frequency must be in [1, {m}], got {df_j}")
    return math.log(m / df_j)


def build_vectors(docs: Sequence[TokenizedDocument], vocab: Vocabulary, m=None) -> CorpusMatrix:
    """Count tf per retained term and weight it by ``idf(M, df)``.

    ``m`` defaults to ``len(docs)``; pass the fitted corpus size when
    vectorizing unseen documents against an existing vocabulary.
    """
    m = len(docs) if m is None else m
    idfs = [idf(m, d) for d in vocab.df]
    vectors = []
    for i, doc in enumerate(docs):
        counts = Counter(tok for tok in doc.tokens if tok in vocab.index)
        tf = {vocab.index[t]: n for t, n in sorted(counts.items())}
        weights = {t: n * idfs[t] for t, n in tf.items()}
        vectors.append(WeightedVector(i, tf, weights))
    return CorpusMatrix(len(docs), vocab, vectors)


def keyword_set(vector: WeightedVector, tf_support: int = 1) -> Set[int]:
    """Term ids whose raw count strictly exceeds ``tf_support``."""
    tf_support = check_int(tf_support, "tf_support")
    return {t for t, n in vector.tf.items() if n > tf_support}
