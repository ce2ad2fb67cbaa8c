"""Apriori mining of frequent, closed and maximal itemsets.

The database is the transposed document-term view: every retained term is
a transaction and its items are the documents using it as a keyword. A
frequent itemset is therefore a group of documents that share at least
``minsup`` keywords.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from ._validation import check_int
from .exceptions import EmptyDatabase
from .vectorspace import CorpusMatrix, WeightedVector

__all__ = [
    "TransactionDB",
    "Itemset",
    "MiningResult",
    "build_transactions",
    "transactions_from_vectors",
    "apriori_frequent",
    "maximal_filter",
    "closed_filter",
    "mine",
]


@dataclass(frozen=True)
class Itemset:
    items: Tuple[int, ...]
    support: int

    def __len__(self):
        return len(self.items)

    def sort_key(self):
        return (len(self.items), self.items)

    def to_dict(self):
        return {"docs": list(self.items), "support": self.support}


@dataclass(frozen=True)
class TransactionDB:
    transactions: Tuple[Tuple[int, Tuple[int, ...]], ...]
    universe: int

    def __post_init__(self):
        for tid, items in self.transactions:
            if any(b <= a for a, b in zip(items, items[1:])):
                raise ValueError(f"transaction {tid} items are not strictly increasing")
            if items and (items[0] < 0 or items[-1] >= self.universe):
                raise ValueError(f"transaction {tid} has an item outside [0, {self.universe})")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], universe=None):
        """Build a database from plain item collections; tids are positions."""
        rows = tuple((tid, tuple(sorted(set(s)))) for tid, s in enumerate(sets))
        if universe is None:
            universe = 1 + max((r[1][-1] for r in rows if r[1]), default=-1)
        return cls(rows, universe)

    def support(self, items: Iterable[int]) -> int:
        wanted = set(items)
        return sum(1 for _, row in self.transactions if wanted.issubset(row))


@dataclass(frozen=True)
class MiningResult:
    frequent: Tuple[Itemset, ...]
    closed: Tuple[Itemset, ...]
    maximal: Tuple[Itemset, ...]
    minsup: int

    def to_dict(self):
        return {"minsup": self.minsup, "maximal": [x.to_dict() for x in self.maximal]}


def transactions_from_vectors(vectors: Sequence[WeightedVector], tf_support: int = 1) -> TransactionDB:
    """One transaction per term: the positions of vectors with ``tf > tf_support``.

    Transactions with fewer than two items are dropped.
    """
    tf_support = check_int(tf_support, "tf_support")
    by_term: Dict[int, List[int]] = {}
    for pos, vec in enumerate(vectors):
        for t, n in vec.tf.items():
            if n > tf_support:
                by_term.setdefault(t, []).append(pos)
    rows = tuple((t, tuple(docs)) for t, docs in sorted(by_term.items()) if len(docs) >= 2)
    if not rows:
        raise EmptyDatabase(f"no term is a keyword (tf > {tf_support}) of two or more documents")
    return TransactionDB(rows, len(vectors))


def build_transactions(matrix: CorpusMatrix, tf_support: int = 1) -> TransactionDB:
    return transactions_from_vectors(matrix.vectors, tf_support)


def _count(db: TransactionDB, candidates: List[Tuple[int, ...]]) -> Dict[Tuple[int, ...], int]:
    rows = [frozenset(items) for _, items in db.transactions]
    counts = dict.fromkeys(candidates, 0)
    for row in rows:
        for cand in candidates:
            if row.issuperset(cand):
                counts[cand] += 1
    return counts


def apriori_frequent(db: TransactionDB, minsup: int = 2) -> List[Itemset]:
    """All itemsets with support >= ``minsup``, ordered by (size, items).

    Level-wise candidate generation: two frequent (k-1)-sets sharing their
    first k-2 items are joined, and a candidate survives only if each of
    its (k-1)-subsets is frequent.
    """
    minsup = check_int(minsup, "minsup", minimum=1)
    singles: Dict[int, int] = {}
    for _, items in db.transactions:
        for i in items:
            singles[i] = singles.get(i, 0) + 1
    level = {(i,): n for i, n in sorted(singles.items()) if n >= minsup}
    result = [Itemset(k, n) for k, n in level.items()]
    k = 2
    while level:
        prev = sorted(level)
        prev_set = set(prev)
        candidates = []
        for a_idx, a in enumerate(prev):
            for b in prev[a_idx + 1:]:
                if a[:-1] != b[:-1]:
                    break
                cand = a + (b[-1],)
                if all(sub in prev_set for sub in combinations(cand, k - 1)):
                    candidates.append(cand)
        if not candidates:
            break
        counts = _count(db, candidates)
        level = {c: n for c, n in counts.items() if n >= minsup}
        result.extend(Itemset(c, n) for c, n in sorted(level.items()))
        k += 1
    return result


def _by_size(frequent: Sequence[Itemset]):
    sizes: Dict[int, List[Itemset]] = {}
    for x in frequent:
        sizes.setdefault(len(x), []).append(x)
    return sizes


def maximal_filter(frequent: Sequence[Itemset]) -> List[Itemset]:
    """Members of FI with no frequent proper superset.

    By downward closure it suffices to look one level up: X has a frequent
    proper superset iff some frequent set of size |X|+1 contains X.
    """
    sizes = _by_size(frequent)
    covered = set()
    for k, sets in sizes.items():
        for y in sets:
            covered.update(combinations(y.items, k - 1))
    return sorted((x for x in frequent if x.items not in covered), key=Itemset.sort_key)


def closed_filter(frequent: Sequence[Itemset]) -> List[Itemset]:
    """Members of FI with no proper superset of equal support.

    If supp(Y) = supp(X) for some Y > X then every set between them has the
    same support, so again only the next level needs checking.
    """
    sizes = _by_size(frequent)
    absorbed = set()
    for k, sets in sizes.items():
        sub_support = {x.items: x.support for x in sizes.get(k - 1, ())}
        for y in sets:
            for sub in combinations(y.items, k - 1):
                if sub_support.get(sub) == y.support:
                    absorbed.add(sub)
    return sorted((x for x in frequent if x.items not in absorbed), key=Itemset.sort_key)


def mine(db: TransactionDB, minsup: int = 2) -> MiningResult:
    frequent = apriori_frequent(db, minsup)
    closed = closed_filter(frequent)
    maximal = maximal_filter(frequent)
    fi = {x.items for x in frequent}
    fci = {x.items for x in closed}
    assert all(x.items in fci for x in maximal) and fci <= fi, "MFI <= FCI <= FI violated"
    return MiningResult(tuple(frequent), tuple(closed), tuple(maximal), minsup)
