import json
import math

import pytest
from hypothesis import given, strategies as st

from mficlust.exceptions import DomainError, EmptyCorpus, EmptyVocabulary
from mficlust.preprocess import TokenizedDocument
from mficlust.vectorspace import (
    Vocabulary,
    WeightedVector,
    build_vectors,
    build_vocabulary,
    idf,
    keyword_set,
)

from _corpora import topic_documents


def docs_of(*token_lists):
    return [TokenizedDocument(i, list(t)) for i, t in enumerate(token_lists)]


# Table 1 of the transaction view: java in docs 1, 2, 4; beans in doc 2;
# servlets in docs 1, 3, 4.
TABLE1 = docs_of(
    ["java", "servlet"],
    ["java", "bean"],
    ["servlet"],
    ["java", "servlet"],
)


def kept_terms(docs, threshold):
    try:
        return set(build_vocabulary(docs, threshold).terms)
    except EmptyVocabulary:
        return set()


class TestBuildVocabulary:
    def test_table1_java_kept(self):
        vocab = build_vocabulary(TABLE1, 0.8)
        assert "java" in vocab
        assert vocab.df[vocab.index["java"]] == 3

    def test_ubiquitous_term_removed(self):
        docs = docs_of(["java", "x1"], ["java", "x2"], ["java", "x3"], ["java", "x4"])
        vocab = build_vocabulary(docs, 0.8)
        assert "java" not in vocab
        assert vocab.terms == ["x1", "x2", "x3", "x4"]

    def test_threshold_one_strict(self):
        docs = docs_of(["java", "a"], ["java", "b"])
        assert build_vocabulary(docs, 1.0).terms == ["a", "b"]

    def test_lexicographic_ids(self):
        vocab = build_vocabulary(docs_of(["zeta", "alpha"], ["mid"]), 1.0)
        assert vocab.terms == ["alpha", "mid", "zeta"]
        assert [vocab.index[t] for t in vocab.terms] == [0, 1, 2]

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            build_vocabulary([], 0.8)

    def test_empty_vocabulary(self):
        with pytest.raises(EmptyVocabulary):
            build_vocabulary(docs_of(["a"], ["a"]), 0.8)

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.5, float("nan")])
    def test_bad_threshold(self, bad):
        with pytest.raises(DomainError):
            build_vocabulary(TABLE1, bad)

    @given(st.integers(0, 200), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
    def test_monotone_in_threshold(self, seed, a, b):
        lo, hi = sorted((a, b))
        docs = topic_documents(seed)
        assert kept_terms(docs, lo) <= kept_terms(docs, hi)

    def test_deterministic(self):
        docs = topic_documents(7)
        a = build_vectors(docs, build_vocabulary(docs))
        b = build_vectors(docs, build_vocabulary(docs))
        assert a.to_json() == b.to_json()


class TestIdf:
    def test_zero(self):
        assert idf(4, 4) == 0.0

    def test_ln2(self):
        assert idf(4, 2) == pytest.approx(0.6931471805599453, abs=1e-15)

    def test_ln10(self):
        assert idf(10, 1) == pytest.approx(2.302585092994046, abs=1e-15)

    @pytest.mark.parametrize("df", [0, 5, -1])
    def test_domain(self, df):
        with pytest.raises(DomainError):
            idf(4, df)

    @given(st.integers(1, 1000).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m), st.integers(1, m))))
    def test_ordering(self, args):
        m, a, b = args
        if a < b:
            assert idf(m, a) > idf(m, b)


class TestBuildVectors:
    def test_tf_and_weight(self):
        vocab = Vocabulary(["java", "servlet"], [2, 3])
        matrix = build_vectors(docs_of(["java", "java", "servlet"], [], [], []), vocab)
        vec = matrix.vectors[0]
        assert vec.tf == {0: 2, 1: 1}
        assert vec.weights[0] == pytest.approx(1.3862943611198906, rel=1e-12)
        assert vec.weights[1] == pytest.approx(math.log(4 / 3), rel=1e-12)

    def test_empty_tokens(self):
        vocab = build_vocabulary(TABLE1, 0.8)
        matrix = build_vectors(TABLE1 + docs_of([]), vocab)
        assert matrix.vectors[-1].weights == {}

    def test_filtered_document_is_empty(self):
        docs = docs_of(["java", "a"], ["java", "b"], ["java"], ["java", "c"])
        matrix = build_vectors(docs, build_vocabulary(docs, 0.8))
        assert matrix.vectors[2].weights == {} and matrix.vectors[2].tf == {}

    def test_invariants(self):
        docs = topic_documents(3)
        matrix = build_vectors(docs, build_vocabulary(docs))
        assert matrix.m == len(docs)
        assert [v.doc_id for v in matrix.vectors] == list(range(matrix.m))
        for v in matrix.vectors:
            assert v.tf.keys() == v.weights.keys()
            assert all(0 <= t < len(matrix.vocabulary) for t in v.tf)

    def test_json_dump(self):
        matrix = build_vectors(TABLE1, build_vocabulary(TABLE1, 0.8))
        data = json.loads(matrix.to_json())
        assert data["m"] == 4
        assert data["terms"] == ["bean", "java", "servlet"]
        assert data["df"] == [1, 3, 3]
        entry = data["vectors"][0]["entries"][0]
        assert entry[:2] == [1, 1]
        assert entry[2] == matrix.vectors[0].weights[1]

    def test_sparse_export(self):
        matrix = build_vectors(TABLE1, build_vocabulary(TABLE1, 0.8))
        dense = matrix.to_sparse().toarray()
        assert dense.shape == (4, 3)
        assert dense[1, 0] == pytest.approx(math.log(4))


class TestKeywordSet:
    vec = WeightedVector(0, {0: 2, 1: 1}, {0: 1.0, 1: 0.5})

    def test_strict(self):
        assert keyword_set(self.vec, 1) == {0}

    def test_zero_support(self):
        assert keyword_set(self.vec, 0) == {0, 1}

    def test_high_support(self):
        assert keyword_set(self.vec, 2) == set()
