"""MFI-seeded, non-overlapping hierarchical document clustering.

Each level mines maximal frequent document sets over the current
(pseudo-)documents, resolves documents claimed by several sets to the set
whose center is most similar, and merges every resulting cluster into a
center pseudo-document for the next level. Documents joining no set pass
through unchanged. The loop ends at a single node, when a level brings no
reduction, or at ``max_levels``; in the last two cases the survivors hang
from a synthetic root.
"""

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ._validation import check_int
from .exceptions import EmptyDatabase
from .mining import Itemset, mine, transactions_from_vectors
from .vectorspace import CorpusMatrix, Vocabulary, WeightedVector

__all__ = [
    "HierarchyConfig",
    "Cluster",
    "OverlapAssignment",
    "LevelRecord",
    "Node",
    "HierarchyTree",
    "center_of",
    "weighted_jaccard",
    "resolve_overlaps",
    "build_level",
    "build_hierarchy",
]

Vectors = Union[Sequence[WeightedVector], Mapping[int, WeightedVector]]
# score(itemset, doc_id) -> similarity of the document to the itemset's center
Scorer = Callable[[Itemset, int], float]
# miner(vectors, level) -> maximal itemsets over positions in ``vectors``
Miner = Callable[[Sequence[WeightedVector], int], Sequence[Itemset]]


@dataclass(frozen=True)
class HierarchyConfig:
    tf_support: int = 1
    minsup: int = 2
    max_levels: int = 32
    n_label_terms: int = 5

    def __post_init__(self):
        check_int(self.tf_support, "tf_support")
        check_int(self.minsup, "minsup", minimum=1)
        check_int(self.max_levels, "max_levels", minimum=1)
        check_int(self.n_label_terms, "n_label_terms")


@dataclass
class Cluster:
    members: Tuple[int, ...]
    center: WeightedVector
    seed_support: int = 0
    label_terms: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class OverlapAssignment:
    doc_id: int
    candidates: Tuple[int, ...]
    chosen: int
    scores: Tuple[float, ...] = ()


@dataclass
class LevelRecord:
    """What happened while building one level: the seeds and the overlap choices."""

    mfis: List[Itemset]
    assignments: List[OverlapAssignment]


@dataclass
class Node:
    level: int
    index: int
    cluster: Cluster
    children: List["Node"] = field(default_factory=list)
    documents: Tuple[int, ...] = ()
    synthetic: bool = False

    @property
    def id(self) -> str:
        return f"L{self.level}_{self.index + 1}"


@dataclass
class HierarchyTree:
    levels: List[List[Node]]
    root: Node
    records: List[LevelRecord] = field(default_factory=list)

    def nodes(self):
        for level in self.levels:
            yield from level

    def level_sizes(self) -> List[int]:
        return [len(level) for level in self.levels]

    def leaves(self) -> List[int]:
        return sorted(d for node in self.levels[0] for d in node.documents)

    def labels(self, level: int = 1) -> List[int]:
        """Per original document, the index of its node at ``level``."""
        level = min(level, len(self.levels) - 1)
        out = [0] * len(self.levels[0])
        for node in self.levels[level]:
            for d in node.documents:
                out[d] = node.index
        return out

    def to_dict(self):
        return {
            "levels": len(self.levels),
            "nodes": [
                {
                    "id": node.id,
                    "level": node.level,
                    "members": list(node.documents),
                    "label_terms": list(node.cluster.label_terms),
                    "children": [c.id for c in node.children],
                    "synthetic": node.synthetic,
                }
                for node in self.nodes()
            ],
            "root": self.root.id,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _lookup(vectors: Vectors, doc_id: int) -> WeightedVector:
    return vectors[doc_id]


def center_of(members, vectors: Vectors, doc_id: int = 0) -> WeightedVector:
    """Mean weight (absent = 0) and summed tf over the members' term union."""
    members = list(members)
    if not members:
        raise ValueError("center_of needs at least one member")
    tf: Dict[int, int] = {}
    total: Dict[int, float] = {}
    for d in members:
        vec = _lookup(vectors, d)
        for t, n in vec.tf.items():
            tf[t] = tf.get(t, 0) + n
        for t, w in vec.weights.items():
            total[t] = total.get(t, 0.0) + w
    k = len(members)
    if k == 1:
        only = _lookup(vectors, members[0])
        return WeightedVector(doc_id, dict(only.tf), dict(only.weights))
    order = sorted(total)
    return WeightedVector(doc_id, {t: tf[t] for t in order}, {t: total[t] / k for t in order})


def weighted_jaccard(u: WeightedVector, v: WeightedVector):
    """Sum of elementwise minima over sum of maxima; 0 when both are empty.

    Arithmetic follows the weight type, so Fraction weights give an exact
    Fraction result.
    """
    uw, vw = u.weights, v.weights
    num = 0
    den = 0
    for t in sorted(uw.keys() | vw.keys()):
        a = uw.get(t, 0)
        b = vw.get(t, 0)
        if a < b:
            num += a
            den += b
        else:
            num += b
            den += a
    if not den:
        return 0.0
    return num / den


def _label_terms(center: WeightedVector, vocabulary: Optional[Vocabulary], k: int) -> List[str]:
    if vocabulary is None or k == 0:
        return []
    ranked = sorted(center.weights.items(), key=lambda kv: (-kv[1], vocabulary.terms[kv[0]]))
    return [vocabulary.terms[t] for t, _ in ranked[:k]]


def resolve_overlaps(
    mfis: Sequence[Itemset],
    vectors: Vectors,
    score: Optional[Scorer] = None,
    vocabulary: Optional[Vocabulary] = None,
    n_label_terms: int = 5,
) -> Tuple[List[Cluster], List[OverlapAssignment]]:
    """Turn possibly overlapping itemsets into disjoint clusters.

    Identical itemsets keep only their first occurrence. Each document held
    by two or more itemsets (ascending doc id) starts at its first
    candidate and moves to a later one only on strictly higher similarity
    to that candidate's center; it is then removed everywhere else. Centers
    used for scoring come from the memberships before any removal.
    Itemsets emptied by removals are dropped.
    """
    seen = set()
    seeds: List[Itemset] = []
    for x in mfis:
        if x.items not in seen:
            seen.add(x.items)
            seeds.append(x)

    if score is None:
        frozen = [center_of(x.items, vectors) for x in seeds]
        position = {x.items: i for i, x in enumerate(seeds)}

        def score(itemset, doc_id):
            return weighted_jaccard(frozen[position[itemset.items]], _lookup(vectors, doc_id))

    holders: Dict[int, List[int]] = {}
    for idx, x in enumerate(seeds):
        for d in x.items:
            holders.setdefault(d, []).append(idx)

    members = [set(x.items) for x in seeds]
    assignments = []
    for d in sorted(holders):
        candidates = holders[d]
        if len(candidates) < 2:
            continue
        scores = [score(seeds[c], d) for c in candidates]
        best = 0
        for i in range(1, len(candidates)):
            if scores[i] > scores[best]:
                best = i
        chosen = candidates[best]
        for c in candidates:
            if c != chosen:
                members[c].discard(d)
        assignments.append(OverlapAssignment(d, tuple(candidates), chosen, tuple(scores)))

    clusters = []
    for x, mem in zip(seeds, members):
        if not mem:
            continue
        mem = tuple(sorted(mem))
        center = center_of(mem, vectors)
        clusters.append(Cluster(mem, center, x.support, _label_terms(center, vocabulary, n_label_terms)))
    return clusters, assignments


def _default_miner(config: HierarchyConfig) -> Miner:
    def miner(vectors, level):
        try:
            db = transactions_from_vectors(vectors, config.tf_support)
        except EmptyDatabase:
            return []
        return [x for x in mine(db, config.minsup).maximal if len(x) >= 2]

    return miner


def build_level(
    docs: Sequence[WeightedVector],
    config: HierarchyConfig = HierarchyConfig(),
    *,
    level: int = 1,
    miner: Optional[Miner] = None,
    score: Optional[Scorer] = None,
    vocabulary: Optional[Vocabulary] = None,
) -> Tuple[List[Cluster], List[int], LevelRecord]:
    """Cluster one level of (pseudo-)documents.

    Returns the clusters, the positions joining no cluster, and a record of
    the mined seeds and overlap assignments.
    """
    miner = miner or _default_miner(config)
    mfis, seen = [], set()
    for x in miner(docs, level):
        if len(x) >= 2 and x.items not in seen:
            seen.add(x.items)
            mfis.append(x)
    clusters, assignments = resolve_overlaps(mfis, docs, score, vocabulary, config.n_label_terms)
    used = {d for c in clusters for d in c.members}
    unclustered = [i for i in range(len(docs)) if i not in used]
    return clusters, unclustered, LevelRecord(mfis, assignments)


def build_hierarchy(
    matrix: CorpusMatrix,
    config: HierarchyConfig = HierarchyConfig(),
    *,
    miner: Optional[Miner] = None,
    score: Optional[Scorer] = None,
) -> HierarchyTree:
    """Stack levels until one node remains or no further merge happens.

    ``miner`` and ``score`` override MFI mining and the overlap similarity
    for every level; both default to the real computations.
    """
    if matrix.m < 1:
        raise ValueError("cannot build a hierarchy over an empty corpus")
    vocab = matrix.vocabulary
    k = config.n_label_terms
    leaves = []
    for i, vec in enumerate(matrix.vectors):
        cluster = Cluster((i,), vec, 0, _label_terms(vec, vocab, k))
        leaves.append(Node(0, i, cluster, documents=(i,)))
    levels = [leaves]
    records = []

    current = leaves
    while len(current) > 1 and len(levels) <= config.max_levels:
        level = len(levels)
        docs = [node.cluster.center for node in current]
        clusters, unclustered, record = build_level(
            docs, config, level=level, miner=miner, score=score, vocabulary=vocab
        )
        if not any(len(c.members) >= 2 for c in clusters):
            break
        records.append(record)
        nxt = []
        for pos in unclustered:
            child = current[pos]
            src = child.cluster.center
            center = WeightedVector(len(nxt), dict(src.tf), dict(src.weights))
            passed = Cluster((pos,), center, 0, list(child.cluster.label_terms))
            nxt.append(Node(level, len(nxt), passed, [child], child.documents))
        for c in clusters:
            kids = [current[p] for p in c.members]
            docs_below = tuple(sorted(d for kid in kids for d in kid.documents))
            c.center.doc_id = len(nxt)
            nxt.append(Node(level, len(nxt), c, kids, docs_below))
        levels.append(nxt)
        current = nxt

    if len(current) == 1:
        return HierarchyTree(levels, current[0], records)

    level = len(levels)
    members = tuple(range(len(current)))
    center = center_of(members, [n.cluster.center for n in current], doc_id=0)
    cluster = Cluster(members, center, 0, _label_terms(center, vocab, k))
    root = Node(level, 0, cluster, list(current), tuple(sorted(d for n in current for d in n.documents)), True)
    levels.append([root])
    return HierarchyTree(levels, root, records)
