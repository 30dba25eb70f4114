from __future__ import annotations

from ..patterns import Boxed, Classical, Consecutive, Pattern
from ..perm import Permutation
from .backtrack import match_backtrack
from .exhaustive import match_exhaustive
from .poly import match_boxed, match_consecutive, match_identity
from .result import MatchResult
from .separable import is_separable, match_separable

ALGORITHMS = ("auto", "exhaustive", "backtrack", "consecutive", "boxed", "lis", "separable")


class AlgorithmMismatch(ValueError):
    """The requested algorithm does not apply to this pattern."""


def match(
    p: Pattern,
    t: Permutation,
    algo: str = "auto",
    use_separable: bool = False,
    time_cap: float | None = None,
) -> MatchResult:
    """Route a pattern to the cheapest applicable matcher.

    Separable classical patterns only go to the interval DP when
    ``use_separable`` is set; its O(k n^4) table is slower than backtracking
    on most practical inputs.
    """
    if algo == "auto":
        algo = _choose(p, use_separable)
    if algo == "exhaustive":
        return match_exhaustive(p.to_mesh(), t)
    if algo == "backtrack":
        return match_backtrack(p.to_mesh(), t, time_cap=time_cap)
    if algo == "consecutive":
        if not isinstance(p, Consecutive):
            raise AlgorithmMismatch("consecutive algorithm needs a consecutive pattern")
        return match_consecutive(p.perm, t)
    if algo == "boxed":
        if not isinstance(p, Boxed):
            raise AlgorithmMismatch("boxed algorithm needs a boxed pattern")
        return match_boxed(p.perm, t)
    if algo == "lis":
        if not (isinstance(p, Classical) and p.perm.is_identity()):
            raise AlgorithmMismatch("lis algorithm needs the classical identity pattern")
        return match_identity(len(p.perm), t)
    if algo == "separable":
        if not (isinstance(p, Classical) and is_separable(p.perm)):
            raise AlgorithmMismatch("separable algorithm needs a separable classical pattern")
        return match_separable(p.perm, t)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")


def _choose(p: Pattern, use_separable: bool) -> str:
    if isinstance(p, Consecutive):
        return "consecutive"
    if isinstance(p, Boxed):
        return "boxed"
    if isinstance(p, Classical):
        if p.perm.is_identity():
            return "lis"
        if use_separable and is_separable(p.perm):
            return "separable"
    return "backtrack"
