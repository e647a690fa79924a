"""Spanning tree congestion: exact search and the 3-Partition reduction to proper interval graphs."""

from .classify import OrderingWitness, clique_cover_3, find_claw, is_proper_interval_ordering
from .exact import (
    InfeasibleError,
    SpiderVerdict,
    StcResult,
    check_spider_lemma,
    count_spanning_trees,
    enumerate_spanning_trees,
    iter_spanning_trees,
    stc_decide,
    stc_exact,
)
from .graph import (
    CongestionReport,
    Graph,
    GraphError,
    SpanningTree,
    Subtree,
    TreeShape,
    build_graph,
    classify_tree_shape,
    edge_congestion,
    edge_cut_size,
    minimal_spanning_subtree,
    split_of_edge,
    tree_congestion,
)
from .reduction import (
    ReductionArtifact,
    audit_construction,
    build_reduction,
    build_witness_tree,
    expected_degree,
    extract_partition,
    gamma_profile,
    star_family_congestion,
)
from .threepart import (
    NormalizedInstance,
    Partition,
    ThreePartitionInstance,
    normalize_instance,
    solve_3partition_bruteforce,
    validate_instance,
    verify_partition,
)

__version__ = "0.1.0"
