"""Polynomial special cases: consecutive, boxed mesh, and identity patterns."""
from __future__ import annotations

import time
from bisect import bisect_left, insort
from typing import Iterator

from ..perm import Permutation
from .result import Matching, MatchResult, MatchStats


def _value_order(p: Permutation) -> list[int]:
    """0-based pattern indices sorted by pattern value."""
    return [i - 1 for i in p.positions()[1:]]


def consecutive_windows(p: Permutation, t: Permutation, stats: MatchStats | None = None) -> Iterator[int]:
    """Start positions (1-based) of every window of t order-isomorphic to p."""
    k, n = len(p), len(t)
    order = _value_order(p)
    pairs = list(zip(order, order[1:]))
    tv = t.values
    checked = 0
    try:
        for w in range(n - k + 1):
            checked += 1
            for a, b in pairs:
                if tv[w + a] > tv[w + b]:
                    break
            else:
                yield w + 1
    finally:
        if stats is not None:
            stats.nodes += checked


def match_consecutive(p: Permutation, t: Permutation) -> MatchResult:
    t0 = time.perf_counter()
    stats = MatchStats()
    start = next(consecutive_windows(p, t, stats), None) if len(p) <= len(t) else None
    stats.elapsed = time.perf_counter() - t0
    if start is None:
        return MatchResult(False, None, stats, "consecutive")
    positions = tuple(range(start, start + len(p)))
    return MatchResult(True, Matching.from_positions(p, t, positions), stats, "consecutive")


def boxed_occurrences(p: Permutation, t: Permutation, stats: MatchStats | None = None) -> Iterator[tuple[int, ...]]:
    """Occurrences of the boxed pattern p, one per (min value, max value) pair.

    For fixed smallest matched value i and largest j, the text restricted to
    values in [i, j] must contain the occurrence as k consecutive entries, and
    the slot of i pins down which k.  Values are added to the restricted text
    one j at a time.
    """
    k, n = len(p), len(t)
    if k > n:
        return
    order = _value_order(p)
    lo_slot = order[0]
    hi_slot = order[-1]
    tv = (0, *t.values)
    tpos = t.positions()
    pairs = 0
    try:
        for i in range(1, n - k + 2):
            pi = tpos[i]
            window: list[int] = []
            for j in range(i, n + 1):
                insort(window, tpos[j])
                if j - i + 1 < k:
                    continue
                pairs += 1
                start = bisect_left(window, pi) - lo_slot
                if start < 0 or start + k > len(window):
                    continue
                cand = window[start : start + k]
                if cand[hi_slot] != tpos[j]:
                    continue
                prev = 0
                for s in order:
                    v = tv[cand[s]]
                    if v < prev:
                        break
                    prev = v
                else:
                    yield tuple(cand)
    finally:
        if stats is not None:
            stats.nodes += pairs


def match_boxed(p: Permutation, t: Permutation) -> MatchResult:
    t0 = time.perf_counter()
    stats = MatchStats()
    found = next(boxed_occurrences(p, t, stats), None)
    stats.elapsed = time.perf_counter() - t0
    witness = Matching.from_positions(p, t, found) if found else None
    return MatchResult(found is not None, witness, stats, "boxed")


def longest_increasing_prefix(t: Permutation, k: int | None = None, stats: MatchStats | None = None) -> tuple[int, ...]:
    """Patience sorting.  Positions of an increasing subsequence of length k
    (stopping as soon as one exists), or of maximal length if k is None or
    unattainable."""
    tails: list[int] = []
    tail_pos: list[int] = []
    pred = [0] * (len(t) + 1)
    best_end = 0
    for i, v in enumerate(t.values, 1):
        h = bisect_left(tails, v)
        pred[i] = tail_pos[h - 1] if h else 0
        if h == len(tails):
            tails.append(v)
            tail_pos.append(i)
            best_end = i
        else:
            tails[h] = v
            tail_pos[h] = i
        if k is not None and len(tails) >= k:
            best_end = tail_pos[k - 1]
            break
    if stats is not None:
        stats.nodes += i if t.values else 0
    out = []
    i = best_end
    while i:
        out.append(i)
        i = pred[i]
    return tuple(reversed(out))


def match_identity(k: int, t: Permutation) -> MatchResult:
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    stats = MatchStats()
    positions = longest_increasing_prefix(t, k, stats)
    stats.elapsed = time.perf_counter() - t0
    if len(positions) < k:
        return MatchResult(False, None, stats, "lis")
    return MatchResult(True, Matching.from_positions(Permutation.identity(k), t, positions), stats, "lis")
