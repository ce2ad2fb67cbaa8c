"""Near-duplicate detection through an equivalence relation on documents.

Pairwise weighted Jaccard gives a fuzzy similarity relation. Optionally it
is made max-min transitive, then cut at ``alpha``; the connected components
of the cut are the equivalence classes. Non-singleton classes are reported
as duplicate groups.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._validation import check_fraction, check_similarity_matrix
from .hierarchy import weighted_jaccard
from .vectorspace import CorpusMatrix, WeightedVector

__all__ = [
    "SimilarityMatrix",
    "CutRelation",
    "Partition",
    "DedupReport",
    "pairwise_jaccard",
    "maxmin_compose",
    "maxmin_closure",
    "alpha_cut",
    "partition",
    "dedup_report",
]


@dataclass(frozen=True)
class SimilarityMatrix:
    entries: np.ndarray

    @classmethod
    def from_rows(cls, rows):
        """Validate and wrap a nested list or array (raises MalformedMatrix)."""
        return cls(check_similarity_matrix(rows))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class CutRelation:
    adjacency: np.ndarray

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def pairs(self) -> List[Tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(a), int(b)) for a, b in zip(i, j)]

    def size_with_reflexive(self) -> int:
        return int(self.adjacency.sum()) + self.n


@dataclass(frozen=True)
class Partition:
    classes: Tuple[Tuple[int, ...], ...]

    def labels(self) -> List[int]:
        n = sum(len(c) for c in self.classes)
        out = [0] * n
        for k, cls in enumerate(self.classes):
            for d in cls:
                out[d] = k
        return out


@dataclass(frozen=True)
class DedupReport:
    alpha: float
    closure: bool
    partition: Partition
    groups: Tuple[dict, ...]
    singletons: Tuple[int, ...]

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "closure": self.closure,
            "groups": [dict(g) for g in self.groups],
            "singletons": list(self.singletons),
        }


def pairwise_jaccard(
    matrix, similarity: Callable[[WeightedVector, WeightedVector], float] = weighted_jaccard
) -> SimilarityMatrix:
    """Fill the upper triangle with ``similarity`` and mirror it.

    Exactly n(n-1)/2 similarity calls are made; the diagonal is 1.
    ``matrix`` is a CorpusMatrix or a plain sequence of vectors.
    """
    vectors: Sequence[WeightedVector] = matrix.vectors if isinstance(matrix, CorpusMatrix) else matrix
    n = len(vectors)
    out = np.eye(n, dtype=np.float64)
    for i in range(n):
        vi = vectors[i]
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = similarity(vi, vectors[j])
    return SimilarityMatrix(out)


def maxmin_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(A o B)[i, k] = max_j min(A[i, j], B[j, k])."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.result_type(a, b))
    for j in range(a.shape[1]):
        np.maximum(out, np.minimum.outer(a[:, j], b[j, :]), out=out)
    return out


def maxmin_closure(sim: SimilarityMatrix) -> SimilarityMatrix:
    """Smallest max-min transitive matrix dominating ``sim``.

    Iterates R <- max(R, R o R); each pass doubles the path length covered,
    so the fixpoint arrives within ceil(log2 n) + 1 passes.
    """
    r = sim.entries.copy()
    limit = max(1, math.ceil(math.log2(max(sim.n, 2)))) + 1
    for _ in range(limit + 1):
        nxt = np.maximum(r, maxmin_compose(r, r))
        if np.array_equal(nxt, r):
            return SimilarityMatrix(r)
        r = nxt
    raise RuntimeError("max-min closure did not converge")  # pragma: no cover


def alpha_cut(sim: SimilarityMatrix, alpha: float) -> CutRelation:
    alpha = check_fraction(alpha, "alpha")
    adj = sim.entries >= alpha
    np.fill_diagonal(adj, False)
    return CutRelation(adj)


def partition(rel: CutRelation) -> Partition:
    """Connected components of the cut, each sorted, ordered by smallest member."""
    n_comp, labels = connected_components(csr_matrix(rel.adjacency), directed=False)
    classes = [[] for _ in range(n_comp)]
    for doc, lab in enumerate(labels):
        classes[lab].append(doc)
    return Partition(tuple(sorted(tuple(c) for c in classes)))


def dedup_report(
    matrix,
    alpha: float = 0.8,
    use_closure: bool = True,
    sources: Optional[Sequence[str]] = None,
) -> DedupReport:
    """Run the whole pipeline on a CorpusMatrix or a SimilarityMatrix.

    Each group lists the related pairs of its class together with their
    raw pairwise similarity.
    """
    raw = matrix if isinstance(matrix, SimilarityMatrix) else pairwise_jaccard(matrix)
    closed = maxmin_closure(raw) if use_closure else raw
    rel = alpha_cut(closed, alpha)
    part = partition(rel)
    groups = []
    singletons = []
    for cls in part.classes:
        if len(cls) == 1:
            singletons.append(cls[0])
            continue
        pairs = [
            [i, j, float(raw.entries[i, j])]
            for a, i in enumerate(cls)
            for j in cls[a + 1:]
            if rel.adjacency[i, j]
        ]
        groups.append({
            "docs": list(cls),
            "sources": [sources[d] for d in cls] if sources is not None else [],
            "pairs": pairs,
        })
    return DedupReport(float(alpha), bool(use_closure), part, tuple(groups), tuple(singletons))
