"""Document clustering with maximal frequent itemsets and near-duplicate
detection through equivalence relations."""

from .dedup import (
    CutRelation,
    Partition,
    SimilarityMatrix,
    alpha_cut,
    dedup_report,
    maxmin_closure,
    pairwise_jaccard,
    partition,
)
from .estimators import EquivalenceDeduplicator, MFIHierarchicalClustering, MFIVectorizer
from .exceptions import (
    DomainError,
    EmptyCorpus,
    EmptyDatabase,
    EmptyVocabulary,
    MalformedMatrix,
    MFIClustError,
)
from .hierarchy import (
    HierarchyConfig,
    HierarchyTree,
    build_hierarchy,
    build_level,
    center_of,
    resolve_overlaps,
    weighted_jaccard,
)
from .mining import Itemset, MiningResult, TransactionDB, apriori_frequent, build_transactions, mine
from .preprocess import RawDocument, TokenizedDocument, preprocess_document, strip_html, tokenize
from .vectorspace import CorpusMatrix, Vocabulary, WeightedVector, build_vectors, build_vocabulary, idf

__version__ = "0.1.0"
