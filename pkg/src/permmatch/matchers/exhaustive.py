from __future__ import annotations

import time
from functools import lru_cache
from itertools import combinations
from math import comb

from ..patterns import MeshPattern
from ..perm import Permutation, build_grid
from .backtrack import enumerate_backtrack
from .result import Matching, MatchResult, MatchStats


def match_exhaustive(m: MeshPattern, t: Permutation) -> MatchResult:
    """Try every k-subset of text positions in lexicographic order.

    The first passing subset is the lexicographically least occurrence.
    """
    t0 = time.perf_counter()
    stats = MatchStats()
    k, n = len(m.perm), len(t)
    found = None
    if k <= n:
        cells = sorted(m.cells)
        counts = build_grid(t).counts if cells else None
        for positions, img in _order_matches(m.perm, t):
            stats.nodes += 1
            if cells:
                cols = (0, *positions, n + 1)
                vals = (0, *img, n + 1)
                if any(_open_count(counts, cols[x], cols[x + 1], vals[y], vals[y + 1]) for x, y in cells):
                    continue
            found = positions
            break
    stats.elapsed = time.perf_counter() - t0
    witness = Matching.from_positions(m.perm, t, found) if found else None
    return MatchResult(found is not None, witness, stats, "exhaustive")


SHAPE_CACHE_LIMIT = 2000


def _order_matches(p: Permutation, t: Permutation):
    """(positions, matched values sorted) for every order-isomorphic subset,
    lexicographically."""
    k, n = len(p), len(t)
    if comb(n, k) <= SHAPE_CACHE_LIMIT:
        return _shapes(t, k).get(p.values, ())
    return _scan(p, t)


def _scan(p: Permutation, t: Permutation):
    by_value = [i - 1 for i in p.positions()[1:]]
    tv = t.values
    for positions in combinations(range(1, len(t) + 1), len(p)):
        img = [tv[positions[j] - 1] for j in by_value]
        if all(a < b for a, b in zip(img, img[1:])):
            yield positions, img


@lru_cache(maxsize=1024)
def _shapes(t: Permutation, k: int) -> dict:
    """Every k-subset of positions grouped by the pattern it forms."""
    tv = t.values
    out: dict = {}
    for positions in combinations(range(1, len(t) + 1), k):
        sub = [tv[i - 1] for i in positions]
        img = sorted(sub)
        rank = {v: r for r, v in enumerate(img, 1)}
        out.setdefault(tuple(rank[v] for v in sub), []).append((positions, img))
    return out


def enumerate_occurrences(m: MeshPattern, t: Permutation) -> list[Matching]:
    """Every occurrence, sorted lexicographically by position sequence."""
    return [Matching.from_positions(m.perm, t, pos) for pos in enumerate_backtrack(m, t)]


def count_occurrences(m: MeshPattern, t: Permutation) -> int:
    return len(enumerate_backtrack(m, t))


def _open_count(c, a: int, b: int, lo: int, hi: int) -> int:
    if b - a < 2 or hi - lo < 2:
        return 0
    return c[b - 1][hi - 1] - c[a][hi - 1] - c[b - 1][lo] + c[a][lo]
