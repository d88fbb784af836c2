"""Exhaustive search for trees with minimal atom-bond connectivity index."""

from .degseq import count, enumerate_sequences, extend, is_tree_degree_sequence, truncate
from .filters import FilterConfig, passes, pendant_path_profile, verify_properties
from .greedy import abc_index, abc_of_sequence, build_greedy_tree
from .search import SearchRecord, compare_runs, find_min, merge_records, search_range

__all__ = [
    "FilterConfig",
    "SearchRecord",
    "abc_index",
    "abc_of_sequence",
    "build_greedy_tree",
    "compare_runs",
    "count",
    "enumerate_sequences",
    "extend",
    "find_min",
    "is_tree_degree_sequence",
    "merge_records",
    "passes",
    "pendant_path_profile",
    "search_range",
    "truncate",
    "verify_properties",
]
