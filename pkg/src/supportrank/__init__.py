"""Top-k ranking of support trees in tree-based phylogenetic networks."""

from .decomposition import Decomposition, TrailKind, ZigzagTrail, decompose, is_tree_based
from .errors import (
    InvalidNetworkError,
    NetworkSyntaxError,
    NotTreeBasedError,
    OracleCapExceeded,
    RankOutOfRangeError,
    SupportRankError,
)
from .local_ranking import LocalRanking, build_local_ranking, local_family_size, vector_to_arcs
from .network import PhyloNetwork, generate_random, parse_network, serialize, validate
from .ranking import (
    RankedEnumerator,
    SupportTree,
    SupportTreeSpace,
    count_support_trees,
    enumerate_all,
    parent,
    top_k,
)

__version__ = "0.1.0"
