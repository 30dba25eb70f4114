"""Partially ordered patterns, solved through their linear extensions."""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from ..patterns import MeshPattern
from ..perm import Permutation
from .backtrack import match_backtrack
from .result import Matching, MatchResult, MatchStats

MAX_POP_LENGTH = 8


class CyclicOrder(ValueError):
    pass


@dataclass(frozen=True)
class PopPattern:
    """Letters 1..k are pattern positions; ``(a, b)`` in ``order`` requires the
    text value matched at position a to be smaller than the one at b."""

    k: int
    order: frozenset

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        pairs = frozenset((int(a), int(b)) for a, b in self.order)
        for a, b in pairs:
            if not (1 <= a <= self.k and 1 <= b <= self.k):
                raise ValueError(f"relation {a}<{b} outside [1,{self.k}]")
        closed = _transitive_closure(self.k, pairs)
        if any(a == b for a, b in closed):
            raise CyclicOrder("order relation has a cycle")
        object.__setattr__(self, "order", closed)


def _transitive_closure(k: int, pairs: Iterable[tuple[int, int]]) -> frozenset:
    reach = [set() for _ in range(k + 1)]
    for a, b in pairs:
        reach[a].add(b)
    for m in range(1, k + 1):
        for a in range(1, k + 1):
            if m in reach[a]:
                reach[a] |= reach[m]
    return frozenset((a, b) for a in range(1, k + 1) for b in reach[a])


def linear_extensions(pop: PopPattern) -> Iterator[tuple[int, ...]]:
    """Linear extensions in lexicographic order, smallest letter first."""
    k = pop.k
    preds = [0] * (k + 1)
    for a, b in pop.order:
        preds[b] |= 1 << a

    @lru_cache(maxsize=None)
    def available(placed: int) -> tuple[int, ...]:
        return tuple(
            x for x in range(1, k + 1)
            if not placed >> x & 1 and preds[x] & ~placed == 0
        )

    def walk(placed: int, prefix: list[int]):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for x in available(placed):
            prefix.append(x)
            yield from walk(placed | 1 << x, prefix)
            prefix.pop()

    yield from walk(0, [])


def extension_pattern(ext: tuple[int, ...]) -> Permutation:
    """Letter at rank r of the extension gets pattern value r."""
    vals = [0] * len(ext)
    for rank, letter in enumerate(ext, 1):
        vals[letter - 1] = rank
    return Permutation(tuple(vals))


def match_pop(pop: PopPattern, t: Permutation) -> MatchResult:
    if pop.k > MAX_POP_LENGTH:
        raise ValueError(f"POP length {pop.k} exceeds cap {MAX_POP_LENGTH}")
    t0 = time.perf_counter()
    stats = MatchStats()
    witness = None
    for ext in linear_extensions(pop):
        stats.completions += 1
        res = match_backtrack(MeshPattern(extension_pattern(ext)), t)
        stats.nodes += res.stats.nodes
        stats.rect_queries += res.stats.rect_queries
        if res.found:
            witness = res.witness
            break
    stats.elapsed = time.perf_counter() - t0
    return MatchResult(witness is not None, witness, stats, "pop")


def pop_brute_force(pop: PopPattern, t: Permutation) -> tuple[int, ...] | None:
    """First position tuple (lexicographic) satisfying every relation directly."""
    tv = (0, *t.values)
    for positions in combinations(range(1, len(t) + 1), pop.k):
        if all(tv[positions[a - 1]] < tv[positions[b - 1]] for a, b in pop.order):
            return positions
    return None
