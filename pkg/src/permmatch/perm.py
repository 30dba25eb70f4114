"""Permutations as values.

Positions and values are 1-based.  A permutation of length n is stored as the
tuple ``(pi(1), ..., pi(n))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


class PermutationError(ValueError):
    """Raised for sequences that are not permutations of [n]."""


class DuplicateValue(PermutationError):
    pass


class ValueOutOfRange(PermutationError):
    pass


class NonIntegerToken(PermutationError):
    pass


class EmptyPermutation(PermutationError):
    pass


@dataclass(frozen=True)
class Permutation:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n == 0:
            raise EmptyPermutation("permutation must have length >= 1")
        seen = set()
        for v in vals:
            if isinstance(v, bool) or not isinstance(v, int):
                raise NonIntegerToken(f"non-integer entry {v!r}")
            if not 1 <= v <= n:
                raise ValueOutOfRange(f"value {v} outside [1, {n}]")
            if v in seen:
                raise DuplicateValue(f"value {v} occurs more than once")
            seen.add(v)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        return " ".join(map(str, self.values))

    def at(self, i: int) -> int:
        """Value at 1-based position ``i``."""
        return self.values[i - 1]

    def positions(self) -> tuple[int, ...]:
        """``positions()[v]`` is the 1-based position of value v (index 0 unused)."""
        pos = [0] * (len(self.values) + 1)
        for i, v in enumerate(self.values, 1):
            pos[v] = i
        return tuple(pos)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.values, 1))


def parse_permutation(text: str) -> Permutation:
    """Parse a line of whitespace-separated integers.

    >>> parse_permutation("1 6 4 2 5 3").values
    (1, 6, 4, 2, 5, 3)
    """
    tokens = text.split()
    if not tokens:
        raise EmptyPermutation("empty permutation line")
    vals = []
    for tok in tokens:
        try:
            vals.append(int(tok, 10))
        except ValueError:
            raise NonIntegerToken(f"not an integer: {tok!r}") from None
    return Permutation(tuple(vals))


def standardize(seq: Iterable) -> Permutation:
    """Replace the smallest entry by 1, the next by 2, and so on.

    Entries may be ints or :class:`fractions.Fraction`; floats are rejected
    because ties and rounding would make the result ambiguous.

    >>> standardize([5, 2, 9]).values
    (2, 1, 3)
    """
    entries = [_exact(x) for x in seq]
    if len(set(entries)) != len(entries):
        raise DuplicateValue("standardize needs pairwise distinct entries")
    order = sorted(range(len(entries)), key=entries.__getitem__)
    out = [0] * len(entries)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return Permutation(tuple(out))


def _exact(x):
    if isinstance(x, float):
        raise TypeError("use Fraction, not float, for non-integer entries")
    return Fraction(x)


def reverse(p: Permutation) -> Permutation:
    return Permutation(p.values[::-1])


def complement(p: Permutation) -> Permutation:
    n = len(p)
    return Permutation(tuple(n + 1 - v for v in p.values))


def inverse(p: Permutation) -> Permutation:
    return Permutation(p.positions()[1:])


def runs(p: Permutation) -> list[tuple[int, ...]]:
    """Maximal monotone contiguous segments.

    Neighbouring runs share their boundary element, so ``164253`` splits as
    ``16 | 642 | 25 | 53``.
    """
    vals = p.values
    n = len(vals)
    if n == 1:
        return [vals]
    out = []
    start = 0
    up = vals[1] > vals[0]
    for i in range(2, n):
        step_up = vals[i] > vals[i - 1]
        if step_up != up:
            out.append(vals[start:i])
            start = i - 1
            up = step_up
    out.append(vals[start:])
    return out


def lrun(p: Permutation) -> int:
    return max(len(r) for r in runs(p))


def is_order_isomorphic(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    ia = sorted(range(len(a)), key=a.__getitem__)
    ib = sorted(range(len(b)), key=b.__getitem__)
    return ia == ib


class DominanceGrid:
    """Cumulative point counts of a permutation's grid.

    ``counts[x][y]`` is the number of text elements with position <= x and
    value <= y, for 0 <= x, y <= n.
    """

    __slots__ = ("n", "counts")

    def __init__(self, n: int, counts: list[list[int]]):
        self.n = n
        self.counts = counts

    def rectangle_count(self, pos_lo: int, pos_hi: int, val_lo: int, val_hi: int) -> int:
        return rectangle_count(self, pos_lo, pos_hi, val_lo, val_hi)


@lru_cache(maxsize=2048)
def build_grid(t: Permutation) -> DominanceGrid:
    """Grids are cached per text; treat the result as read-only."""
    n = len(t)
    a = np.zeros((n + 1, n + 1), dtype=np.int32)
    a[np.arange(1, n + 1), np.asarray(t.values)] = 1
    a = a.cumsum(axis=0).cumsum(axis=1)
    return DominanceGrid(n, a.tolist())


def rectangle_count(g: DominanceGrid, pos_lo: int, pos_hi: int, val_lo: int, val_hi: int) -> int:
    """Number of points strictly inside the open box (pos_lo, pos_hi) x (val_lo, val_hi)."""
    n = g.n
    for b in (pos_lo, pos_hi, val_lo, val_hi):
        if not 0 <= b <= n + 1:
            raise ValueError(f"bound {b} outside [0, {n + 1}]")
    if pos_hi - pos_lo < 2 or val_hi - val_lo < 2:
        return 0
    c = g.counts
    top = c[pos_hi - 1]
    bot = c[pos_lo]
    return top[val_hi - 1] - bot[val_hi - 1] - top[val_lo] + bot[val_lo]
