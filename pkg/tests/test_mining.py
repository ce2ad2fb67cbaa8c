import random

import pytest
from hypothesis import given, settings, strategies as st

from mficlust.exceptions import DomainError, EmptyDatabase
from mficlust.mining import (
    Itemset,
    TransactionDB,
    apriori_frequent,
    build_transactions,
    closed_filter,
    maximal_filter,
    mine,
)
from mficlust.preprocess import TokenizedDocument
from mficlust.vectorspace import Vocabulary, WeightedVector, CorpusMatrix, build_vectors

from _oracles import enumerate_closed, enumerate_frequent, enumerate_maximal

A, B, C, D = 0, 1, 2, 3
THREE = TransactionDB.from_sets([{A, B}, {A, B}, {A, C}])


def as_map(itemsets):
    return {x.items: x.support for x in itemsets}


class TestTransactions:
    def table1(self):
        docs = [
            TokenizedDocument(0, ["java", "servlet"]),
            TokenizedDocument(1, ["java", "bean"]),
            TokenizedDocument(2, ["servlet"]),
            TokenizedDocument(3, ["java", "servlet"]),
        ]
        return build_vectors(docs, Vocabulary(["bean", "java", "servlet"], [1, 3, 3]))

    def test_table1(self):
        db = build_transactions(self.table1(), tf_support=0)
        assert dict(db.transactions) == {1: (0, 1, 3), 2: (0, 2, 3)}
        assert db.universe == 4

    def test_singleton_transactions_dropped(self):
        db = build_transactions(self.table1(), tf_support=0)
        assert 0 not in dict(db.transactions)

    def test_tf_support_applies(self):
        with pytest.raises(EmptyDatabase):
            build_transactions(self.table1(), tf_support=1)

    def test_empty_matrix(self):
        empty = CorpusMatrix(2, Vocabulary([], []), [WeightedVector(0), WeightedVector(1)])
        with pytest.raises(EmptyDatabase):
            build_transactions(empty)

    def test_canonical_order_enforced(self):
        with pytest.raises(ValueError):
            TransactionDB(((0, (2, 1)),), 3)
        with pytest.raises(ValueError):
            TransactionDB(((0, (1, 5)),), 3)


class TestApriori:
    def test_three_transactions(self):
        fi = apriori_frequent(THREE, 2)
        assert as_map(fi) == {(A,): 3, (B,): 2, (A, B): 2}
        assert as_map(fi) == enumerate_frequent([{A, B}, {A, B}, {A, C}], 2)

    def test_minsup_above_count(self):
        assert apriori_frequent(THREE, 4) == []

    def test_single_transaction_powerset(self):
        fi = apriori_frequent(TransactionDB.from_sets([{A, B, C}]), 1)
        assert len(fi) == 7
        assert all(x.support == 1 for x in fi)

    def test_canonical_order(self):
        fi = apriori_frequent(TransactionDB.from_sets([{A, B, C}, {A, B, D}]), 1)
        keys = [x.sort_key() for x in fi]
        assert keys == sorted(keys)

    def test_minsup_domain(self):
        with pytest.raises(DomainError):
            apriori_frequent(THREE, 0)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.sets(st.integers(0, 9), max_size=7), max_size=12),
        st.integers(1, 3),
    )
    def test_matches_enumeration(self, rows, minsup):
        db = TransactionDB.from_sets(rows, universe=10)
        assert as_map(apriori_frequent(db, minsup)) == enumerate_frequent(rows, minsup)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.sets(st.integers(0, 8), max_size=6), max_size=10), st.integers(1, 3))
    def test_downward_closure(self, rows, minsup):
        fi = as_map(apriori_frequent(TransactionDB.from_sets(rows, universe=9), minsup))
        for items, s in fi.items():
            for i in range(len(items)):
                sub = items[:i] + items[i + 1:]
                if sub:
                    assert fi[sub] >= s


class TestFilters:
    def test_chain(self):
        fi = [Itemset((A,), 2), Itemset((B,), 2), Itemset((A, B), 2)]
        assert maximal_filter(fi) == [Itemset((A, B), 2)]

    def test_three_transactions(self):
        fi = apriori_frequent(THREE, 2)
        assert maximal_filter(fi) == [Itemset((A, B), 2)]
        assert as_map(closed_filter(fi)) == {(A,): 3, (A, B): 2}

    def test_antichain(self):
        fi = apriori_frequent(TransactionDB.from_sets([{A, B}, {A, B}, {C, D}, {C, D}]), 2)
        assert [x.items for x in maximal_filter(fi)] == [(A, B), (C, D)]
        assert as_map(closed_filter(fi)) == {(A, B): 2, (C, D): 2}

    def test_total_absorption(self):
        fi = apriori_frequent(TransactionDB.from_sets([{A, B, C}] * 3), 1)
        assert as_map(closed_filter(fi)) == {(A, B, C): 3}


class TestMine:
    def test_three_transactions(self):
        res = mine(THREE, 2)
        assert as_map(res.frequent) == {(A,): 3, (B,): 2, (A, B): 2}
        assert as_map(res.closed) == {(A,): 3, (A, B): 2}
        assert [x.items for x in res.maximal] == [(A, B)]
        assert res.to_dict() == {"minsup": 2, "maximal": [{"docs": [0, 1], "support": 2}]}

    def test_identical_transactions(self):
        res = mine(TransactionDB.from_sets([{1, 2, 4}] * 4), 1)
        assert [x.items for x in res.maximal] == [(1, 2, 4)]

    def test_disjoint_transactions(self):
        res = mine(TransactionDB.from_sets([{0, 1}, {2, 3}, {4, 5}]), 2)
        assert res.frequent == res.closed == res.maximal == ()

    def test_degenerate_containment_is_not_strict(self):
        res = mine(TransactionDB.from_sets([{0}]), 1)
        assert res.frequent == res.closed == res.maximal

    @pytest.mark.parametrize("seed", range(25))
    def test_oracle_and_maximality(self, seed):
        rng = random.Random(seed)
        rows = [set(rng.sample(range(10), rng.randint(0, 6))) for _ in range(rng.randint(1, 12))]
        minsup = rng.randint(1, 3)
        db = TransactionDB.from_sets(rows, universe=10)
        res = mine(db, minsup)
        truth = enumerate_frequent(rows, minsup)
        assert as_map(res.frequent) == truth
        assert {x.items for x in res.maximal} == enumerate_maximal(truth)
        assert {x.items for x in res.closed} == enumerate_closed(truth)
        for x in res.maximal:
            for i in set(range(10)) - set(x.items):
                assert db.support(set(x.items) | {i}) < minsup
