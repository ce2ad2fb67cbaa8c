"""scikit-learn style estimators wrapping the functional pipeline.

``MFIVectorizer`` turns raw documents into tf*idf vectors,
``MFIHierarchicalClustering`` builds the cluster tree and
``EquivalenceDeduplicator`` groups near-duplicates. All three accept raw
strings, :class:`RawDocument` objects or pre-tokenized lists; the two
clusterers also accept an already built :class:`CorpusMatrix`.
"""

import re

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_fraction
from .dedup import SimilarityMatrix, alpha_cut, maxmin_closure, pairwise_jaccard, partition
from .exceptions import EmptyCorpus
from .hierarchy import HierarchyConfig, build_hierarchy
from .preprocess import (
    HTML,
    PLAIN,
    RawDocument,
    TokenizedDocument,
    default_stopwords,
    load_stopwords,
    preprocess_document,
)
from .vectorspace import CorpusMatrix, build_vectors, build_vocabulary

__all__ = ["MFIVectorizer", "MFIHierarchicalClustering", "EquivalenceDeduplicator"]

_TAG_RE = re.compile(r"<\s*/?\s*[A-Za-z!][^>]*>")


def _resolve_stopwords(stopwords):
    if stopwords is None:
        return default_stopwords()
    if isinstance(stopwords, str) or hasattr(stopwords, "__fspath__"):
        return load_stopwords(stopwords)
    return frozenset(w.lower() for w in stopwords)


def _tokenize_corpus(documents, stoplist, input_kind):
    if isinstance(documents, (str, bytes)):
        raise TypeError("expected an iterable of documents, got a single string")
    out = []
    for i, doc in enumerate(documents):
        if isinstance(doc, TokenizedDocument):
            out.append(TokenizedDocument(i, list(doc.tokens)))
            continue
        if isinstance(doc, RawDocument):
            raw = RawDocument(i, doc.source, doc.content, doc.kind)
        elif isinstance(doc, str):
            kind = input_kind
            if kind == "auto":
                kind = HTML if _TAG_RE.search(doc) else PLAIN
            raw = RawDocument(i, str(i), doc, kind)
        elif isinstance(doc, (list, tuple)):
            out.append(TokenizedDocument(i, [str(t) for t in doc]))
            continue
        else:
            raise TypeError(f"document {i} has unsupported type {type(doc).__name__}")
        out.append(preprocess_document(raw, stoplist))
    if not out:
        raise EmptyCorpus("no documents supplied")
    return out


class MFIVectorizer(TransformerMixin, BaseEstimator):
    """Preprocess documents and weight their terms by tf * ln(M / df).

    Parameters
    ----------
    stopwords : path, iterable of str or None
        Stopword file or collection; ``None`` uses the bundled list.
    df_threshold : float in (0, 1]
        Terms need ``df < ceil(df_threshold * M)`` to be kept.
    input_kind : {'auto', 'plain', 'html'}
        How string documents are treated. ``'auto'`` strips markup only
        when the text contains something tag-like.

    Attributes
    ----------
    vocabulary_ : Vocabulary
    corpus_ : CorpusMatrix
        The fitted documents.
    n_documents_ : int
    """

    def __init__(self, stopwords=None, df_threshold=0.8, input_kind="auto"):
        self.stopwords = stopwords
        self.df_threshold = df_threshold
        self.input_kind = input_kind

    def _check_params(self):
        check_fraction(self.df_threshold, "df_threshold")
        if self.input_kind not in ("auto", PLAIN, HTML):
            raise ValueError(f"input_kind must be 'auto', 'plain' or 'html', got {self.input_kind!r}")

    def fit(self, X, y=None):
        self._check_params()
        docs = _tokenize_corpus(X, _resolve_stopwords(self.stopwords), self.input_kind)
        self.vocabulary_ = build_vocabulary(docs, self.df_threshold)
        self.corpus_ = build_vectors(docs, self.vocabulary_)
        self.n_documents_ = len(docs)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).corpus_.to_sparse()

    def transform_corpus(self, X) -> CorpusMatrix:
        """Vectorize ``X`` against the fitted vocabulary and document count."""
        check_is_fitted(self, "vocabulary_")
        docs = _tokenize_corpus(X, _resolve_stopwords(self.stopwords), self.input_kind)
        return build_vectors(docs, self.vocabulary_, m=self.n_documents_)

    def transform(self, X):
        return self.transform_corpus(X).to_sparse()

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabulary_")
        return np.asarray(self.vocabulary_.terms, dtype=object)


def _as_corpus(X, stopwords, df_threshold):
    if isinstance(X, CorpusMatrix):
        return X
    return MFIVectorizer(stopwords=stopwords, df_threshold=df_threshold).fit(X).corpus_


class MFIHierarchicalClustering(ClusterMixin, BaseEstimator):
    """Non-overlapping hierarchical clustering seeded by maximal frequent itemsets.

    ``labels_`` holds each document's node index at the first level above
    the leaves; the full tree is in ``tree_``.
    """

    def __init__(
        self,
        tf_support=1,
        minsup=2,
        max_levels=32,
        n_label_terms=5,
        df_threshold=0.8,
        stopwords=None,
    ):
        self.tf_support = tf_support
        self.minsup = minsup
        self.max_levels = max_levels
        self.n_label_terms = n_label_terms
        self.df_threshold = df_threshold
        self.stopwords = stopwords

    def fit(self, X, y=None):
        config = HierarchyConfig(self.tf_support, self.minsup, self.max_levels, self.n_label_terms)
        check_fraction(self.df_threshold, "df_threshold")
        self.corpus_ = _as_corpus(X, self.stopwords, self.df_threshold)
        self.tree_ = build_hierarchy(self.corpus_, config)
        self.labels_ = np.asarray(self.tree_.labels(1), dtype=np.intp)
        self.n_levels_ = len(self.tree_.levels)
        return self


class EquivalenceDeduplicator(ClusterMixin, BaseEstimator):
    """Group near-duplicate documents into equivalence classes.

    With ``metric='precomputed'`` ``X`` is a square similarity matrix;
    otherwise pairwise weighted Jaccard over tf*idf vectors is used.
    ``labels_`` gives the class index of every document.
    """

    def __init__(self, alpha=0.8, closure=True, metric="weighted_jaccard", df_threshold=0.8, stopwords=None):
        self.alpha = alpha
        self.closure = closure
        self.metric = metric
        self.df_threshold = df_threshold
        self.stopwords = stopwords

    def fit(self, X, y=None):
        check_fraction(self.alpha, "alpha")
        if self.metric == "precomputed":
            sim = X if isinstance(X, SimilarityMatrix) else SimilarityMatrix.from_rows(X)
        elif self.metric == "weighted_jaccard":
            check_fraction(self.df_threshold, "df_threshold")
            sim = pairwise_jaccard(_as_corpus(X, self.stopwords, self.df_threshold))
        else:
            raise ValueError(f"metric must be 'weighted_jaccard' or 'precomputed', got {self.metric!r}")
        self.similarity_ = sim
        self.closed_similarity_ = maxmin_closure(sim) if self.closure else sim
        self.relation_ = alpha_cut(self.closed_similarity_, self.alpha)
        self.partition_ = partition(self.relation_)
        self.labels_ = np.asarray(self.partition_.labels(), dtype=np.intp)
        return self

    def duplicate_groups(self):
        check_is_fitted(self, "partition_")
        return [list(c) for c in self.partition_.classes if len(c) > 1]
