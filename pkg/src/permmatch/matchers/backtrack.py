"""Left-to-right backtracking over pattern positions.

Pruning:

* order prefix -- the next entry's text value must fall between the images
  of its nearest already-placed neighbours in value order;
* shaded cells -- a cell is tested the moment both of its column boundaries
  and both of its row boundaries are placed (sentinels count as placed);
* lookahead -- after each placement, every value gap between placed entries
  must still hold enough unused text points to the right for the pattern
  entries that remain to go there.

An optional segregation split ``(p, t)`` restricts pattern values <= p to text
values <= t and the rest to text values > t.
"""
from __future__ import annotations

import time
from functools import lru_cache
from typing import Iterator, Sequence

from ..patterns import MeshPattern
from ..perm import Permutation, build_grid
from .result import Deadline, Matching, MatchResult, MatchStats, SearchTimeout

GRID_LIMIT = 4096


@lru_cache(maxsize=4096)
def _plan(pv: tuple[int, ...], cells: frozenset, split_p: int | None, lookahead: bool):
    """Text-independent search tables, shared by every text a pattern meets."""
    k = len(pv)
    pinv = [0] * (k + 2)
    for j, v in enumerate(pv, 1):
        pinv[v] = j

    # value neighbours among the placed prefix
    lo_nb: list[int] = []
    hi_nb: list[int] = []
    for j in range(k):
        v = pv[j]
        below = [u for u in pv[:j] if u < v]
        above = [u for u in pv[:j] if u > v]
        lo = max(below, default=0)
        hi = min(above, default=k + 1)
        if split_p is not None:
            if v <= split_p:
                if hi > split_p:
                    hi = k + 3
            elif lo <= split_p:
                lo = k + 2
        lo_nb.append(lo)
        hi_nb.append(hi)

    # cells grouped by the placement depth that fixes all four bounds
    cells_at: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for x, y in cells:
        need = [1]
        if x >= 1:
            need.append(x)
        if x + 1 <= k:
            need.append(x + 1)
        if y >= 1:
            need.append(pinv[y])
        if y + 1 <= k:
            need.append(pinv[y + 1])
        cells_at[max(need) - 1].append((x, y))

    # lookahead gaps: after placing pattern positions 1..d
    gaps_at: list[list[tuple[int, int, int]]] = [[] for _ in range(k)]
    if lookahead:
        for d in range(1, k):
            keys = sorted(pv[:d])
            bounds = [(0, 0)] + [(v, v) for v in keys] + [(k + 1, k + 1)]
            if split_p is not None:
                half = split_p + 0.5
                bounds.append((half, None))
                bounds.sort(key=lambda b: b[0])
            rest = pv[d:]
            for (a, ai), (b, bi) in zip(bounds, bounds[1:]):
                need = sum(1 for u in rest if a < u < b)
                if need:
                    lo_idx = k + 2 if ai is None else ai
                    hi_idx = k + 3 if bi is None else bi
                    gaps_at[d - 1].append((lo_idx, hi_idx, need))

    return tuple(lo_nb), tuple(hi_nb), tuple(map(tuple, cells_at)), tuple(map(tuple, gaps_at))


class BacktrackSearch:
    def __init__(
        self,
        perm: Sequence[int],
        text: Permutation,
        cells=(),
        split: tuple[int, int] | None = None,
        lookahead: bool = True,
        time_cap: float | None = None,
    ):
        self.perm = tuple(perm)
        self.text = text
        k = self.k = len(self.perm)
        n = self.n = len(text)
        self.tv = (0, *text.values)
        self.tpos = text.positions()
        self.grid = build_grid(text).counts if n <= GRID_LIMIT and (cells or lookahead) else None
        self.lookahead = lookahead and self.grid is not None
        self.deadline = Deadline(time_cap)
        self.stats = MatchStats()
        self.split = split

        self.lo_nb, self.hi_nb, self.cells_at, self.gaps_at = _plan(
            self.perm, frozenset(cells), None if split is None else split[0], self.lookahead
        )

        # mu[0], mu[k+1] are the value sentinels; k+2 / k+3 encode the split
        # threshold as an open lower / upper bound.
        self.mu = [0] * (k + 4)
        self.mu[k + 1] = n + 1
        if split is not None:
            self.mu[k + 2] = split[1]
            self.mu[k + 3] = split[1] + 1

        self.pos = [0] * (k + 2)
        self.pos[k + 1] = n + 1
        self._found: list[tuple[int, ...]] = []
        self._stop = True

    # -- counting helpers -------------------------------------------------

    def _rect(self, a: int, b: int, c: int, d: int) -> int:
        self.stats.rect_queries += 1
        if b - a < 2 or d - c < 2:
            return 0
        g = self.grid
        if g is not None:
            top = g[b - 1]
            bot = g[a]
            return top[d - 1] - bot[d - 1] - top[c] + bot[c]
        tv = self.tv
        return sum(1 for i in range(a + 1, b) if c < tv[i] < d)

    # -- search -------------------------------------------------------------

    def _candidates(self, j: int) -> Iterator[int]:
        mu = self.mu
        lo = mu[self.lo_nb[j]]
        hi = mu[self.hi_nb[j]]
        start = self.pos[j] + 1
        end = self.n - (self.k - 1 - j)
        if hi - lo - 1 < end - start + 1:
            tpos = self.tpos
            return iter(sorted(i for i in (tpos[v] for v in range(lo + 1, hi)) if start <= i <= end))
        tv = self.tv
        return (i for i in range(start, end + 1) if lo < tv[i] < hi)

    def _extend(self, j: int) -> bool:
        k = self.k
        if j == k:
            self._found.append(tuple(self.pos[1 : k + 1]))
            return self._stop
        pos, mu, tv = self.pos, self.mu, self.tv
        v = self.perm[j]
        cells = self.cells_at[j]
        gaps = self.gaps_at[j]
        stats = self.stats
        n1 = self.n + 1
        for i in self._candidates(j):
            stats.nodes += 1
            self.deadline.tick()
            pos[j + 1] = i
            mu[v] = tv[i]
            ok = True
            for x, y in cells:
                if self._rect(pos[x], pos[x + 1], mu[y], mu[y + 1]):
                    ok = False
                    break
            if ok:
                for lo, hi, need in gaps:
                    if self._rect(i, n1, mu[lo], mu[hi]) < need:
                        ok = False
                        break
            if ok and self._extend(j + 1):
                return True
        return False

    def run(self, stop_at_first: bool = True) -> list[tuple[int, ...]]:
        self._stop = stop_at_first
        self._found = []
        if self.k <= self.n:
            self._extend(0)
        return self._found


def match_backtrack(
    m: MeshPattern,
    t: Permutation,
    time_cap: float | None = None,
    lookahead: bool = True,
) -> MatchResult:
    return _run(m.perm.values, t, m.cells, None, lookahead, time_cap, "backtrack")


def _run(perm, t, cells, split, lookahead, time_cap, name) -> MatchResult:
    t0 = time.perf_counter()
    search = BacktrackSearch(perm, t, cells, split=split, lookahead=lookahead, time_cap=time_cap)
    timed_out = False
    try:
        found = search.run()
    except SearchTimeout:
        found, timed_out = [], True
    search.stats.elapsed = time.perf_counter() - t0
    witness = Matching.from_positions(Permutation(tuple(perm)), t, found[0]) if found else None
    return MatchResult(bool(found), witness, search.stats, name, timed_out)


def backtrack_segregated(
    perm: Permutation,
    t: Permutation,
    p: int,
    threshold: int,
    time_cap: float | None = None,
    lookahead: bool = True,
) -> MatchResult:
    return _run(perm.values, t, (), (p, threshold), lookahead, time_cap, "segregated-backtrack")


def enumerate_backtrack(m: MeshPattern, t: Permutation) -> list[tuple[int, ...]]:
    """All occurrence position tuples, lexicographically ordered."""
    return BacktrackSearch(m.perm.values, t, m.cells).run(stop_at_first=False)
