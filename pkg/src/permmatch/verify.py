"""Invariant suites comparing fast matchers against brute-force oracles.

Each suite returns a :class:`SuiteReport`.  Cases can be fanned out to a
process pool; results are gathered in submission order so summaries are
identical for any ``jobs`` value.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import chain, combinations, permutations, product

from .gen import random_permutation, random_pop, random_sppm, rng_for
from .matchers import (
    is_separable,
    match,
    match_backtrack,
    match_boxed,
    match_consecutive,
    match_exhaustive,
    match_identity,
    match_pop,
    match_separable,
    pop_brute_force,
)
from .patterns import (
    Bivincular,
    Boxed,
    Classical,
    Consecutive,
    MeshPattern,
    Pattern,
    Vincular,
    is_occurrence,
    print_pattern,
)
from .perm import Permutation
from .reductions import (
    ONWARD,
    Graph,
    match_segregated,
    onward_statistic,
    verify_reduction_chain,
)
from .transforms import verify_blowup

BOXED_EQUIVALENT = ((1,), (1, 2), (2, 1), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2))
PATTERN_KINDS = ("classical", "vincular", "bivincular", "mesh", "boxed", "consecutive")
MAX_FAILURES_KEPT = 20


class BoundsError(ValueError):
    """Suite bounds too large for the brute-force side, or nonsensical."""


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    tallies: Counter = field(default_factory=Counter)
    failures: list[str] = field(default_factory=list)
    n_failures: int = 0

    @property
    def passed(self) -> bool:
        return self.n_failures == 0

    def fail(self, msg: str) -> None:
        self.n_failures += 1
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(msg)

    def merge(self, other: "SuiteReport") -> None:
        self.cases += other.cases
        self.tallies.update(other.tallies)
        self.n_failures += other.n_failures
        for f in other.failures:
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(f)

    def lines(self) -> list[str]:
        out = [f"{self.name}: {self.cases - self.n_failures}/{self.cases} passed"]
        out += [f"  {key}\t{self.tallies[key]}" for key in sorted(self.tallies)]
        out += [f"  FAIL {f}" for f in self.failures]
        return out


def _fan_out(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _check_bounds(**bounds) -> None:
    for name, (value, lo, hi) in bounds.items():
        if not lo <= value <= hi:
            raise BoundsError(f"{name}={value} outside [{lo}, {hi}]")


def all_permutations(n: int):
    for vals in permutations(range(1, n + 1)):
        yield Permutation(vals)


def _subsets(items):
    items = list(items)
    return (frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r))


# -- oracle agreement -----------------------------------------------------------

def mesh_shadings(perm: Permutation, full: bool, samples: int, seed: int):
    """Every shading when ``full``; otherwise a structured family plus a
    seeded random sample."""
    k = len(perm)
    grid = [(x, y) for x in range(k + 1) for y in range(k + 1)]
    if full:
        yield from _subsets(grid)
        return
    seen = set()
    family = chain(
        [frozenset(), frozenset(grid)],
        (frozenset([c]) for c in grid),
        (frozenset(c) for c in combinations(grid, 2)),
        [frozenset((x, y) for x in range(1, k) for y in range(1, k))],
    )
    rng = rng_for(seed * 1_000_003 + hash(perm.values) % 1_000_003)
    rand = (frozenset(c for c in grid if rng.random() < 0.25) for _ in range(samples))
    for cells in chain(family, rand):
        if cells not in seen:
            seen.add(cells)
            yield cells


def patterns_of_kind(kind: str, k: int, mesh_full_max_k: int = 2, mesh_samples: int = 0, seed: int = 0):
    span = range(k + 1)
    for perm in all_permutations(k):
        if kind == "classical":
            yield Classical(perm)
        elif kind == "vincular":
            for cols in _subsets(span):
                yield Vincular(perm, cols)
        elif kind == "bivincular":
            for cols, rows in product(list(_subsets(span)), list(_subsets(span))):
                yield Bivincular(perm, cols, rows)
        elif kind == "mesh":
            for cells in mesh_shadings(perm, k <= mesh_full_max_k, mesh_samples, seed):
                yield MeshPattern(perm, cells)
        elif kind == "boxed":
            yield Boxed(perm)
        elif kind == "consecutive":
            yield Consecutive(perm)
        else:
            raise ValueError(f"unknown pattern kind {kind!r}")


def _specialized(p: Pattern, t: Permutation):
    """(label, result) pairs for every dedicated matcher that applies to p."""
    out = []
    if isinstance(p, Consecutive):
        out.append(("consecutive", match_consecutive(p.perm, t)))
    if isinstance(p, Boxed):
        out.append(("boxed", match_boxed(p.perm, t)))
    if isinstance(p, Classical):
        if p.perm.is_identity():
            out.append(("lis", match_identity(len(p.perm), t)))
        if is_separable(p.perm):
            out.append(("separable", match_separable(p.perm, t)))
        out.append(("dispatch-separable", match(p, t, use_separable=True)))
    if isinstance(p, (Consecutive, Boxed)) or (isinstance(p, Classical) and p.perm.is_identity()):
        out.append(("dispatch", match(p, t)))
    return out


def _oracle_case(args) -> SuiteReport:
    kind, pats, texts = args
    rep = SuiteReport(kind)
    meshes = [(p, p.to_mesh()) for p in pats]
    for t in texts:
        for p, m in meshes:
            rep.cases += 1
            ex = match_exhaustive(m, t)
            bt = match_backtrack(m, t)
            ok = True
            if bt.found != ex.found or (ex.found and bt.witness.positions != ex.witness.positions):
                ok = False
                rep.fail(f"backtrack {print_pattern(p)} | {t}: {bt.found} vs {ex.found}")
            for label, res in _specialized(p, t):
                rep.tallies[f"{kind}/{label} calls"] += 1
                if res.found != ex.found or (res.found and not is_occurrence(m, t, res.witness.positions)):
                    ok = False
                    rep.fail(f"{label} {print_pattern(p)} | {t}: {res.found} vs {ex.found}")
            rep.tallies[f"{kind} yes" if ex.found else f"{kind} no"] += 1
            if not ok:
                rep.tallies[f"{kind} mismatch"] += 1
    return rep


def oracle_agreement(
    max_k: int = 3,
    max_n: int = 6,
    kinds=PATTERN_KINDS,
    mesh_full_max_k: int = 2,
    mesh_samples: int = 32,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Every matcher against ``match_exhaustive`` over all texts of length <= max_n."""
    _check_bounds(max_k=(max_k, 1, 4), max_n=(max_n, 1, 8))
    texts = [t for n in range(1, max_n + 1) for t in all_permutations(n)]
    work = []
    for kind in kinds:
        for k in range(1, max_k + 1):
            pats = list(patterns_of_kind(kind, k, mesh_full_max_k, mesh_samples, seed))
            step = 64
            work += [(kind, pats[i : i + step], texts) for i in range(0, len(pats), step)]
    total = SuiteReport("oracle-agreement")
    for part in _fan_out(_oracle_case, work, jobs):
        total.merge(part)
    return total


# -- boxed list -------------------------------------------------------------------

def _boxed_case(args) -> SuiteReport:
    perm_vals, max_n, witness_max_n = args
    pi = Permutation(perm_vals)
    rep = SuiteReport("boxed-list")
    rep.cases = 1
    cl = Classical(pi).to_mesh()
    if perm_vals in BOXED_EQUIVALENT:
        for n in range(1, max_n + 1):
            for t in all_permutations(n):
                if match_backtrack(cl, t).found != match_boxed(pi, t).found:
                    rep.fail(f"{pi}: classical and boxed differ on {t}")
                    return rep
        rep.tallies["equivalent up to max-n"] += 1
        return rep
    for n in range(len(pi), witness_max_n + 1):
        for t in all_permutations(n):
            if not match_boxed(pi, t).found and match_backtrack(cl, t).found:
                rep.tallies[f"witness at n={n}"] += 1
                return rep
    rep.fail(f"{pi}: no classical-yes/boxed-no text up to n={witness_max_n}")
    return rep


def boxed_list(max_n: int = 7, max_k: int = 4, witness_max_n: int = 9, jobs: int = 1) -> SuiteReport:
    """Classical and boxed containment coincide exactly for the seven listed
    patterns; every other pattern gets a separating text."""
    _check_bounds(max_n=(max_n, 1, 9), max_k=(max_k, 1, 5), witness_max_n=(witness_max_n, max_k, 10))
    work = [(p.values, max_n, witness_max_n) for k in range(1, max_k + 1) for p in all_permutations(k)]
    total = SuiteReport("boxed-list")
    for part in _fan_out(_boxed_case, work, jobs):
        total.merge(part)
    return total


# -- blow-up ------------------------------------------------------------------------

def _blowup_case(args) -> SuiteReport:
    p_vals, t_vals = args
    rep = SuiteReport("blowup")
    rep.cases = 1
    r = verify_blowup(Permutation(p_vals), Permutation(t_vals))
    rep.tallies["contained" if r.contained else "not contained"] += 1
    for f in r.failures:
        rep.fail(f"{Permutation(p_vals)} | {Permutation(t_vals)}: {f}")
    return rep


def blowup_suite(cases: int = 500, seed: int = 0, max_k: int = 4, max_n: int = 8, jobs: int = 1) -> SuiteReport:
    _check_bounds(cases=(cases, 1, 10**6), max_k=(max_k, 1, 6), max_n=(max_n, 1, 12))
    rng = rng_for(seed)
    work = []
    for _ in range(cases):
        k = rng.randint(1, max_k)
        n = rng.randint(1, max_n)
        work.append((random_permutation(rng, k).values, random_permutation(rng, n).values))
    total = SuiteReport("blowup")
    for part in _fan_out(_blowup_case, work, jobs):
        total.merge(part)
    return total


# -- reduction chain ----------------------------------------------------------------

def all_graphs(n: int):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(e for i, e in enumerate(pairs) if mask >> i & 1))


def _chain_case(args) -> SuiteReport:
    g, k, time_cap = args
    rep = SuiteReport("reduction-chain")
    rep.cases = 1
    r = verify_reduction_chain(g, k, time_cap=time_cap)
    rep.tallies[f"k={k} {'clique' if r.answers['clique'] else 'no clique'}"] += 1
    if not r.agree:
        rep.fail(
            f"edges={sorted(g.edges)} k={k}: mismatch={r.mismatch} "
            f"timeouts={r.timeouts} structural={r.structural_errors}"
        )
    return rep


def _onward_case(args) -> SuiteReport:
    inst, time_cap = args
    rep = SuiteReport("sppm-onward")
    rep.cases = 1
    truth = match_segregated(inst, method="exhaustive").found
    rep.tallies["sppm yes" if truth else "sppm no"] += 1
    for kind, fn in ONWARD.items():
        pat, txt = fn(inst)
        if onward_statistic(kind, pat) != 1:
            rep.fail(f"{kind} statistic != 1 for {inst}")
        res = match_backtrack(pat.to_mesh(), txt, time_cap=time_cap)
        if res.timed_out or res.found != truth:
            rep.fail(f"{kind}: {res.found} vs {truth} for {inst}")
    return rep


def reduction_chain(
    vertices: int = 4,
    ks=(2, 3, 4),
    sppm_cases: int = 200,
    sppm_max_k: int = 4,
    sppm_max_n: int = 8,
    seed: int = 0,
    time_cap: float = 60.0,
    jobs: int = 1,
) -> SuiteReport:
    _check_bounds(vertices=(vertices, 1, 5), sppm_cases=(sppm_cases, 0, 10**5))
    ks = [k for k in ks if k <= vertices]
    if not ks:
        raise BoundsError(f"no clique size in {ks} fits {vertices} vertices")
    work = [(g, k, time_cap) for g in all_graphs(vertices) for k in ks]
    total = SuiteReport("reduction-chain")
    for part in _fan_out(_chain_case, work, jobs):
        total.merge(part)
    rng = rng_for(seed)
    insts = [(random_sppm(rng, sppm_max_k, sppm_max_n), time_cap) for _ in range(sppm_cases)]
    for part in _fan_out(_onward_case, insts, jobs):
        total.merge(part)
    return total


# -- partially ordered patterns -------------------------------------------------------

def _pop_case(args) -> SuiteReport:
    pop, t = args
    rep = SuiteReport("pop")
    rep.cases = 1
    res = match_pop(pop, t)
    bf = pop_brute_force(pop, t)
    rep.tallies["yes" if bf else "no"] += 1
    if res.found != (bf is not None):
        rep.fail(f"k={pop.k} order={sorted(pop.order)} text={t}: {res.found} vs brute force")
    if res.stats.completions > math.factorial(pop.k):
        rep.fail(f"k={pop.k}: {res.stats.completions} completions > k!")
    if res.witness is not None:
        tv = (0, *t.values)
        pos = res.witness.positions
        if not all(tv[pos[a - 1]] < tv[pos[b - 1]] for a, b in pop.order):
            rep.fail(f"witness {pos} violates the order")
    return rep


def pop_suite(cases: int = 100, seed: int = 0, max_k: int = 5, max_n: int = 8, jobs: int = 1) -> SuiteReport:
    _check_bounds(cases=(cases, 1, 10**6), max_k=(max_k, 1, 8), max_n=(max_n, 1, 12))
    rng = rng_for(seed)
    work = []
    for _ in range(cases):
        k = rng.randint(1, max_k)
        pop = random_pop(rng, k)
        work.append((pop, random_permutation(rng, rng.randint(1, max_n))))
    total = SuiteReport("pop")
    for part in _fan_out(_pop_case, work, jobs):
        total.merge(part)
    return total
