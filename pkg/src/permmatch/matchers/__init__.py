from .backtrack import BacktrackSearch, backtrack_segregated, match_backtrack
from .dispatch import ALGORITHMS, AlgorithmMismatch, match
from .exhaustive import count_occurrences, enumerate_occurrences, match_exhaustive
from .poly import (
    boxed_occurrences,
    consecutive_windows,
    longest_increasing_prefix,
    match_boxed,
    match_consecutive,
    match_identity,
)
from .pop import CyclicOrder, PopPattern, linear_extensions, match_pop, pop_brute_force
from .result import Matching, MatchResult, MatchStats
from .separable import NotSeparable, is_separable, match_separable, separating_tree

__all__ = [
    "ALGORITHMS",
    "AlgorithmMismatch",
    "BacktrackSearch",
    "CyclicOrder",
    "Matching",
    "MatchResult",
    "MatchStats",
    "NotSeparable",
    "PopPattern",
    "backtrack_segregated",
    "boxed_occurrences",
    "consecutive_windows",
    "count_occurrences",
    "enumerate_occurrences",
    "is_separable",
    "linear_extensions",
    "longest_increasing_prefix",
    "match",
    "match_backtrack",
    "match_boxed",
    "match_consecutive",
    "match_exhaustive",
    "match_identity",
    "match_pop",
    "match_separable",
    "pop_brute_force",
    "separating_tree",
]
