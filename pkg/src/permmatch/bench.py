"""Scaling benchmarks.  Instances are generated from the seed; only the
``seconds`` column varies between runs."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .gen import random_permutation, rng_for
from .matchers import MatchStats, boxed_occurrences, consecutive_windows, longest_increasing_prefix, match_backtrack
from .patterns import MeshPattern
from .transforms import blowup_run2

SUITES = ("consecutive", "boxed", "backtrack", "lis")
DEFAULT_SIZES = {
    "consecutive": (100_000, 200_000, 400_000),
    "boxed": (250, 500, 1000),
    "backtrack": (20, 40, 80),
    "lis": (100_000, 400_000),
}
DEFAULT_K = {"consecutive": 10, "boxed": 4, "backtrack": 5, "lis": 0}
COLUMNS = ("suite", "n", "k", "hits", "nodes", "seconds")


@dataclass(frozen=True)
class BenchRow:
    suite: str
    n: int
    k: int
    hits: int
    nodes: int
    seconds: float

    def tsv(self) -> str:
        return f"{self.suite}\t{self.n}\t{self.k}\t{self.hits}\t{self.nodes}\t{self.seconds:.6f}"


MIN_SAMPLE_SECONDS = 1.0
MAX_ROUNDS = 60


@dataclass
class _Case:
    suite: str
    n: int
    k: int
    work: object  # callable(stats) -> (hits, stats)


def _prepare(suite: str, n: int, k: int, seed: int, time_cap: float | None) -> _Case:
    rng = rng_for(seed * 7919 + n)
    if suite == "consecutive":
        # full scan: every window is examined and every hit reported
        p, t = random_permutation(rng, k), random_permutation(rng, n)
        return _Case(suite, n, k, lambda st: (sum(1 for _ in consecutive_windows(p, t, st)), st))
    if suite == "boxed":
        p, t = random_permutation(rng, k), random_permutation(rng, n)
        return _Case(suite, n, k, lambda st: (sum(1 for _ in boxed_occurrences(p, t, st)), st))
    if suite == "lis":
        t = random_permutation(rng, n)
        return _Case(suite, n, n, lambda st: (len(longest_increasing_prefix(t, None, st)), st))
    if suite == "backtrack":
        # run-length-two inputs, where no polynomial special case applies
        b = blowup_run2(random_permutation(rng, k), random_permutation(rng, n))
        mesh = MeshPattern(b.pattern_out)

        def work(st):
            res = match_backtrack(mesh, b.text_out, time_cap=time_cap)
            return int(res.found), res.stats

        return _Case(suite, len(b.text_out), len(b.pattern_out), work)
    raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")


def run_bench(
    suite: str,
    sizes=None,
    k: int | None = None,
    seed: int = 0,
    time_cap: float | None = None,
    repeats: int = 9,
    min_total: float = MIN_SAMPLE_SECONDS,
) -> list[BenchRow]:
    """Time every size, reporting the fastest of its runs.

    Sizes are measured in interleaved rounds, so a slow spell on a shared
    machine hits all sizes alike instead of skewing one of them.  Rounds
    continue until every size has ``repeats`` runs and ``min_total`` seconds
    of samples (at most MAX_ROUNDS rounds).
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    sizes = DEFAULT_SIZES[suite] if sizes is None else sizes
    k = DEFAULT_K[suite] if k is None else k
    cases = [_prepare(suite, n, k, seed, time_cap) for n in sizes]
    best = [float("inf")] * len(cases)
    total = [0.0] * len(cases)
    last = [None] * len(cases)
    rounds = 0
    while rounds < max(1, repeats) or (min(total) < min_total and rounds < MAX_ROUNDS):
        for i, case in enumerate(cases):
            t0 = time.perf_counter()
            last[i] = case.work(MatchStats())
            dt = time.perf_counter() - t0
            best[i] = min(best[i], dt)
            total[i] += dt
        rounds += 1
    return [
        BenchRow(c.suite, c.n, c.k, hits, stats.nodes, secs)
        for c, (hits, stats), secs in zip(cases, last, best)
    ]


def loglog_slope(ns, seconds) -> float:
    """Least-squares slope of log(seconds) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(seconds, float)), 1)
    return float(slope)
