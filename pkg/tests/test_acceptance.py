"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; ``conftest.py`` prints them after the
run, and ``python tests/test_acceptance.py`` prints them directly.
"""
from __future__ import annotations

import time

import pytest

from permmatch.bench import loglog_slope, run_bench
from permmatch.matchers import enumerate_occurrences, match, match_exhaustive
from permmatch.patterns import Classical, cells_stat, cols_stat, is_occurrence, rows_stat
from permmatch.perm import Permutation, standardize
from permmatch.reductions import (
    Graph,
    SppmInstance,
    clique_oracle,
    clique_sides,
    match_segregated,
    reduce_sppm_to_bivincular,
    reduce_sppm_to_mesh,
    reduce_sppm_to_vincular,
)
from permmatch.gen import random_sppm, rng_for
from permmatch.verify import (
    all_graphs,
    blowup_suite,
    boxed_list,
    oracle_agreement,
    pop_suite,
    reduction_chain,
)

RESULTS: list[str] = []


def record(num: int, ok: bool, detail: str) -> None:
    RESULTS.append(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def P(*v):
    return Permutation(v)


SIX_VERTEX_GRAPH = Graph(6, frozenset({(1, 2), (1, 6), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 6)}))


def test_criterion_1_worked_examples():
    t0 = time.perf_counter()
    text = P(1, 6, 4, 2, 5, 3)
    c132 = Classical(P(1, 3, 2))
    problems = []

    res = match(c132, text)
    occ = [m.positions for m in enumerate_occurrences(c132.to_mesh(), text)]
    if not (res.found and (1, 3, 4) in occ and is_occurrence(c132.to_mesh(), text, (1, 3, 4))):
        problems.append("132 in 164253 with subsequence 1,4,2")
    if match(Classical(P(1, 2, 3, 4)), text).found:
        problems.append("1234 must not occur in 164253")

    yes = match_segregated(SppmInstance(P(1, 3, 2), P(5, 3, 1, 4, 2), 2, 3))
    stated_mu = {1: 1, 2: 3, 3: 4}
    if not yes.found:
        problems.append("SPPM (132,53142,2,3) must be a yes-instance")
    elif yes.witness.as_dict() != stated_mu:
        problems.append(f"SPPM witness mu={yes.witness.as_dict()} differs from stated mu={stated_mu}")
    if match_segregated(SppmInstance(P(1, 3, 2), P(5, 3, 1, 4, 2), 2, 4)).found:
        problems.append("SPPM (132,53142,2,4) must be a no-instance")

    pat, _, trace = clique_sides(SIX_VERTEX_GRAPH, 3)
    core = standardize([v for v in pat if v <= trace.p]).values
    if core != (4, 1, 8, 5, 12, 9, 2, 6, 3, 10, 7, 11):
        problems.append(f"de-duplicated pattern {core}")
    found, clique = clique_oracle(SIX_VERTEX_GRAPH, 3)
    if not (found and clique == (2, 3, 5)):
        problems.append(f"clique {clique}")

    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s >= 1s")
    record(1, not problems, "; ".join(problems) or f"all examples reproduced in {elapsed:.3f}s")
    assert not problems, problems


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    rep = oracle_agreement(max_k=3, max_n=6)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and elapsed <= 300
    record(2, ok, f"{rep.cases} pattern/text pairs, {rep.n_failures} mismatches, {elapsed:.1f}s (budget 300s)")
    assert rep.passed, rep.failures
    assert elapsed <= 300


def test_criterion_3_boxed_list():
    t0 = time.perf_counter()
    rep = boxed_list(max_n=7, max_k=4, witness_max_n=9)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and rep.cases == 33 and rep.tallies["equivalent up to max-n"] == 7 and elapsed <= 600
    record(3, ok, f"{rep.cases} patterns, 7 equivalent through n=7, others separated; {elapsed:.1f}s (budget 600s)")
    assert ok, rep.lines()


def test_criterion_4_blowup():
    t0 = time.perf_counter()
    rep = blowup_suite(cases=500, seed=0, max_k=4, max_n=8)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and rep.cases == 500 and elapsed <= 120
    record(4, ok, f"{rep.cases - rep.n_failures}/{rep.cases} cases, {elapsed:.1f}s (budget 120s)")
    assert ok, rep.lines()


def test_criterion_5_reduction_chain():
    t0 = time.perf_counter()
    rep = reduction_chain(vertices=4, ks=(2, 3, 4), sppm_cases=200, sppm_max_k=4, sppm_max_n=8, seed=0, time_cap=60.0)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and rep.cases == 64 * 3 + 200
    record(5, ok, f"{rep.cases} instances (192 graph, 200 SPPM), {rep.n_failures} disagreements, {elapsed:.1f}s")
    assert ok, rep.lines()


def test_criterion_6_output_statistics():
    instances = []
    for g in all_graphs(4):
        for k in (2, 3, 4):
            pat, txt, trace = clique_sides(g, k)
            if len(pat) <= len(txt):
                instances.append(SppmInstance(Permutation(tuple(pat)), Permutation(tuple(txt)), trace.p, trace.t))
    instances.append(SppmInstance(P(1, 3, 2), P(5, 3, 1, 4, 2), 2, 3))
    rng = rng_for(0)
    instances += [random_sppm(rng, 4, 8) for _ in range(200)]
    bad = 0
    for inst in instances:
        bad += cols_stat(reduce_sppm_to_vincular(inst)[0]) != 1
        bad += rows_stat(reduce_sppm_to_bivincular(inst)[0]) != 1
        bad += cells_stat(reduce_sppm_to_mesh(inst)[0]) != 1
    record(6, bad == 0, f"{3 * len(instances)} reduced patterns, {bad} with statistic != 1")
    assert bad == 0


SCALING = {
    # suite: (sizes, k, check, description)
    "consecutive": ((100_000, 200_000, 400_000), 10, lambda s: abs(s - 1.0) <= 0.3, "1.0 +- 0.3"),
    "boxed": ((250, 500, 1000), 4, lambda s: s <= 3.3, "<= 3.3"),
    "lis": ((100_000, 400_000), None, lambda s: s <= 1.3, "<= 1.3"),
}


@pytest.mark.parametrize("suite", list(SCALING))
def test_criterion_7_scaling(suite):
    sizes, k, check, want = SCALING[suite]
    t0 = time.perf_counter()
    rows = run_bench(suite, sizes, k, seed=0)
    elapsed = time.perf_counter() - t0
    slope = loglog_slope([r.n for r in rows], [r.seconds for r in rows])
    ok = check(slope) and elapsed <= 300
    record(7, ok, f"{suite} log-log slope {slope:.2f} (want {want}), bench {elapsed:.1f}s")
    assert ok


def test_criterion_8_pop():
    t0 = time.perf_counter()
    rep = pop_suite(cases=100, seed=0, max_k=5, max_n=8)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and rep.cases == 100 and elapsed <= 120
    record(8, ok, f"{rep.cases - rep.n_failures}/{rep.cases} agree with brute force, completions <= k!, {elapsed:.1f}s")
    assert ok, rep.lines()


if __name__ == "__main__":
    import sys

    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_7"):
            for suite in SCALING:
                try:
                    fn(suite)
                except AssertionError:
                    pass
        elif name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
    sys.exit(0 if all(": PASS" in r for r in RESULTS) else 1)
