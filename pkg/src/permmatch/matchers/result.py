from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from ..perm import Permutation


@dataclass(frozen=True)
class Matching:
    """An occurrence, as the value map mu plus the matched text positions.

    ``assignment[v - 1]`` is mu(v); ``positions[j]`` is the text position of
    the (j+1)-th pattern entry.
    """

    pattern_len: int
    assignment: tuple[int, ...]
    positions: tuple[int, ...]

    @classmethod
    def from_positions(cls, pattern: Permutation, text: Permutation, positions: Sequence[int]) -> "Matching":
        k = len(pattern)
        mu = [0] * k
        tv = text.values
        for v, i in zip(pattern.values, positions):
            mu[v - 1] = tv[i - 1]
        return cls(k, tuple(mu), tuple(positions))

    def mu(self, v: int) -> int:
        return self.assignment[v - 1]

    def as_dict(self) -> dict[int, int]:
        return {v: w for v, w in enumerate(self.assignment, 1)}


@dataclass
class MatchStats:
    nodes: int = 0
    rect_queries: int = 0
    elapsed: float = 0.0
    completions: int = 0


@dataclass
class MatchResult:
    found: bool
    witness: Matching | None = None
    stats: MatchStats = field(default_factory=MatchStats)
    algorithm: str = ""
    timed_out: bool = False

    def __bool__(self) -> bool:
        return self.found


class SearchTimeout(Exception):
    pass


class Deadline:
    """Cheap wall-clock budget, polled every ``stride`` ticks."""

    __slots__ = ("at", "stride", "_n")

    def __init__(self, seconds: float | None, stride: int = 2048):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.stride = stride
        self._n = 0

    def tick(self) -> None:
        if self.at is None:
            return
        self._n += 1
        if self._n >= self.stride:
            self._n = 0
            if time.monotonic() > self.at:
                raise SearchTimeout
