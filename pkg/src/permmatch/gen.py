"""Seeded random instances."""
from __future__ import annotations

import random
from array import array
from itertools import combinations

from .matchers import PopPattern
from .patterns import Bivincular, Boxed, Classical, Consecutive, MeshPattern, Pattern, Vincular
from .perm import Permutation
from .reductions import Graph, SppmInstance

DEFAULT_SEED = 0


def rng_for(seed: int | None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    # Re-materialize the ints in position order, as parsing a text line does.
    # Shuffled objects of range() sit in value order in memory, which makes
    # left-to-right scans of long texts cache-hostile.
    return Permutation(tuple(array("q", vals)))


def random_subset(rng: random.Random, items, prob: float = 0.5) -> frozenset:
    return frozenset(x for x in items if rng.random() < prob)


def random_pattern(rng: random.Random, kind: str, k: int) -> Pattern:
    perm = random_permutation(rng, k)
    span = range(k + 1)
    if kind == "classical":
        return Classical(perm)
    if kind == "vincular":
        return Vincular(perm, random_subset(rng, span, 0.3))
    if kind == "bivincular":
        return Bivincular(perm, random_subset(rng, span, 0.3), random_subset(rng, span, 0.3))
    if kind == "mesh":
        return MeshPattern(perm, random_subset(rng, [(x, y) for x in span for y in span], 0.2))
    if kind == "boxed":
        return Boxed(perm)
    if kind == "consecutive":
        return Consecutive(perm)
    raise ValueError(f"unknown pattern kind {kind!r}")


def random_graph(rng: random.Random, n: int, edge_prob: float) -> Graph:
    edges = [e for e in combinations(range(1, n + 1), 2) if rng.random() < edge_prob]
    return Graph(n, frozenset(edges))


def random_sppm(rng: random.Random, max_k: int, max_n: int) -> SppmInstance:
    k = rng.randint(1, max_k)
    n = rng.randint(k, max_n)
    return SppmInstance(random_permutation(rng, k), random_permutation(rng, n), rng.randint(1, k), rng.randint(1, n))


def random_pop(rng: random.Random, k: int, density: float = 0.4) -> PopPattern:
    """Relations are drawn along a hidden shuffled order, so they never cycle."""
    hidden = list(range(1, k + 1))
    rng.shuffle(hidden)
    pairs = [(hidden[i], hidden[j]) for i, j in combinations(range(k), 2) if rng.random() < density]
    return PopPattern(k, frozenset(pairs))
