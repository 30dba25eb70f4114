"""Separable patterns: recognition and interval dynamic programming.

A separable permutation splits recursively into a direct sum (left block
entirely below the right block) or a skew sum (left block entirely above).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from ..patterns import Classical
from ..perm import Permutation
from .exhaustive import match_exhaustive
from .result import Matching, MatchResult, MatchStats


class NotSeparable(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    index: int  # 0-based pattern position


@dataclass(frozen=True)
class Node:
    skew: bool
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Node]


def separating_tree(p: Permutation) -> Tree | None:
    """Binary separating tree of p, or None if p is not separable."""
    vals = p.values

    def build(lo: int, hi: int) -> Tree | None:
        if hi - lo == 1:
            return Leaf(lo)
        seg = vals[lo:hi]
        vmin = min(seg)
        running_max = running_min = seg[0]
        for cut in range(lo + 1, hi):
            running_max = max(running_max, vals[cut - 1])
            running_min = min(running_min, vals[cut - 1])
            size = cut - lo
            if running_min == vmin and running_max == vmin + size - 1:
                skew = False
            elif running_min == vmin + (hi - lo) - size:
                skew = True
            else:
                continue
            left = build(lo, cut)
            right = build(cut, hi)
            if left is None or right is None:
                return None
            return Node(skew, left, right)
        return None

    return build(0, len(vals))


_FORBIDDEN = (Classical((3, 1, 4, 2)), Classical((2, 4, 1, 3)))


def is_separable(p: Permutation, method: str = "tree") -> bool:
    """``method="tree"`` uses block decomposition, ``"avoidance"`` checks that
    neither 3142 nor 2413 occurs."""
    if method == "avoidance":
        return not any(match_exhaustive(f.to_mesh(), p).found for f in _FORBIDDEN)
    return separating_tree(p) is not None


_INF = float("inf")


def match_separable(p: Permutation, t: Permutation) -> MatchResult:
    """Decide containment of a separable pattern by DP over its separating tree.

    ``best(node, a, b, floor)`` is the least possible largest text value of an
    embedding of the node's entries into text positions [a, b] using only
    values above ``floor``.  A direct sum embeds the left block first and
    raises the floor; a skew sum embeds the right block first.  Both choices
    are greedy-safe because ``best`` is monotone in ``floor``.
    """
    tree = separating_tree(p)
    if tree is None:
        raise NotSeparable(f"{p} contains 3142 or 2413")
    t0 = time.perf_counter()
    stats = MatchStats()
    n = len(t)
    tv = (0, *t.values)

    @lru_cache(maxsize=None)
    def leaf(a: int, b: int, floor: int):
        best = _INF
        for i in range(a, b + 1):
            v = tv[i]
            if floor < v < best:
                best = v
        return best

    @lru_cache(maxsize=None)
    def best(node: Tree, a: int, b: int, floor: int):
        stats.nodes += 1
        if isinstance(node, Leaf):
            return leaf(a, b, floor)
        out = _INF
        first, second = (node.right, node.left) if node.skew else (node.left, node.right)
        for cut in range(a, b):
            if node.skew:
                m1 = best(first, cut + 1, b, floor)
                if m1 != _INF:
                    out = min(out, best(second, a, cut, m1))
            else:
                m1 = best(first, a, cut, floor)
                if m1 != _INF:
                    out = min(out, best(second, cut + 1, b, m1))
        return out

    def rebuild(node: Tree, a: int, b: int, floor: int, target, out: dict):
        if isinstance(node, Leaf):
            for i in range(a, b + 1):
                if tv[i] == target:
                    out[node.index] = i
                    return
            raise AssertionError("inconsistent DP table")
        for cut in range(a, b):
            if node.skew:
                m1 = best(node.right, cut + 1, b, floor)
                if m1 != _INF and best(node.left, a, cut, m1) == target:
                    rebuild(node.right, cut + 1, b, floor, m1, out)
                    rebuild(node.left, a, cut, m1, target, out)
                    return
            else:
                m1 = best(node.left, a, cut, floor)
                if m1 != _INF and best(node.right, cut + 1, b, m1) == target:
                    rebuild(node.left, a, cut, floor, m1, out)
                    rebuild(node.right, cut + 1, b, m1, target, out)
                    return
        raise AssertionError("inconsistent DP table")

    witness = None
    if len(p) <= n:
        top = best(tree, 1, n, 0)
        if top != _INF:
            where: dict[int, int] = {}
            rebuild(tree, 1, n, 0, top, where)
            positions = tuple(where[j] for j in range(len(p)))
            witness = Matching.from_positions(p, t, positions)
    stats.elapsed = time.perf_counter() - t0
    return MatchResult(witness is not None, witness, stats, "separable")
