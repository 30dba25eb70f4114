from itertools import permutations

import pytest

from permmatch.matchers import (
    AlgorithmMismatch,
    CyclicOrder,
    NotSeparable,
    PopPattern,
    count_occurrences,
    enumerate_occurrences,
    is_separable,
    linear_extensions,
    longest_increasing_prefix,
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
from permmatch.matchers.pop import MAX_POP_LENGTH
from permmatch.patterns import Boxed, Classical, Consecutive, MeshPattern, Vincular, is_occurrence
from permmatch.perm import Permutation


def P(*vals):
    return Permutation(vals)


def cl(*vals):
    return Classical(P(*vals)).to_mesh()


def test_exhaustive_examples(T):
    res = match_exhaustive(cl(1, 3, 2), T)
    # lexicographically least position triple is (1,2,3): values 1,6,4
    assert res.found and res.witness.positions == (1, 2, 3)
    assert res.witness.as_dict() == {1: 1, 2: 4, 3: 6}
    assert not match_exhaustive(cl(1, 2, 3, 4), T).found
    assert match_exhaustive(cl(1), P(1)).witness.positions == (1,)
    assert not match_exhaustive(cl(1, 2, 3), P(1, 2)).found


def test_backtrack_examples(T):
    assert match_backtrack(cl(1, 3, 2), T).witness.positions == (1, 2, 3)
    assert not match_backtrack(cl(1, 2, 3, 4), T).found
    assert not match_backtrack(Boxed(P(2, 1)).to_mesh(), P(1, 2)).found


def test_backtrack_without_lookahead_agrees(texts_upto_5):
    m = Vincular(P(2, 1, 3), frozenset({2})).to_mesh()
    for t in texts_upto_5:
        assert match_backtrack(m, t, lookahead=False).found == match_exhaustive(m, t).found


def test_timeout_reported():
    t = Permutation(tuple(range(1, 300)))
    res = match_backtrack(cl(*range(40, 0, -1)), t, time_cap=1e-9)
    assert res.timed_out or not res.found


def test_consecutive_examples(T):
    res = match_consecutive(P(1, 3, 2), T)
    assert res.witness.positions == (1, 2, 3)
    assert not match_consecutive(P(1, 2, 3), P(3, 2, 1)).found
    assert match_consecutive(P(1, 2), P(1, 2)).witness.positions == (1, 2)


def test_boxed_examples(T):
    res = match_boxed(P(1, 3, 2), T)
    assert res.found and res.witness.positions == (1, 3, 4)
    assert [T.at(i) for i in res.witness.positions] == [1, 4, 2]
    assert not match_boxed(P(1, 2, 3), P(1, 3, 2, 4)).found
    assert match_exhaustive(cl(1, 2, 3), P(1, 3, 2, 4)).found
    assert match_boxed(P(1), P(1)).found


def test_identity_examples(T):
    res = match_identity(3, T)
    assert res.found and is_occurrence(cl(1, 2, 3), T, res.witness.positions)
    assert not match_identity(2, P(2, 1)).found
    assert match_identity(1, P(3, 1, 2)).found
    with pytest.raises(ValueError):
        match_identity(0, T)
    assert len(longest_increasing_prefix(T)) == 3


def test_separable_examples(T):
    assert not is_separable(P(3, 1, 4, 2)) and not is_separable(P(2, 4, 1, 3))
    assert is_separable(P(1, 3, 2))
    for vals in permutations(range(1, 6)):
        p = Permutation(vals)
        assert is_separable(p) == is_separable(p, method="avoidance")
    assert match_separable(P(1, 3, 2), T).found
    assert not match_separable(P(1, 2), P(2, 1)).found
    assert not match_separable(P(2, 1), P(1, 2)).found
    with pytest.raises(NotSeparable):
        match_separable(P(2, 4, 1, 3), T)


def test_separable_against_oracle():
    for vals in permutations(range(1, 5)):
        p = Permutation(vals)
        if not is_separable(p):
            continue
        for tv in permutations(range(1, 7)):
            t = Permutation(tv)
            res = match_separable(p, t)
            assert res.found == match_exhaustive(Classical(p).to_mesh(), t).found
            if res.found:
                assert is_occurrence(Classical(p).to_mesh(), t, res.witness.positions)


def test_pop_examples():
    assert match_pop(PopPattern(2, frozenset()), P(2, 1)).found
    chain = PopPattern(3, frozenset({(1, 2), (2, 3)}))
    assert not match_pop(chain, P(3, 2, 1)).found
    assert match_pop(PopPattern(3, frozenset({(1, 3)})), P(2, 1, 3)).found
    assert pop_brute_force(PopPattern(3, frozenset({(1, 3)})), P(2, 1, 3)) == (1, 2, 3)


def test_pop_closure_and_cycles():
    pop = PopPattern(3, frozenset({(1, 2), (2, 3)}))
    assert (1, 3) in pop.order
    assert list(linear_extensions(pop)) == [(1, 2, 3)]
    assert len(list(linear_extensions(PopPattern(3, frozenset())))) == 6
    with pytest.raises(CyclicOrder):
        PopPattern(2, frozenset({(1, 2), (2, 1)}))
    with pytest.raises(ValueError):
        match_pop(PopPattern(MAX_POP_LENGTH + 1, frozenset()), P(1))


def test_count_examples(T):
    assert count_occurrences(cl(1, 2), P(1, 2, 3)) == 3
    brute = sum(
        1 for i in range(1, 7) for j in range(i + 1, 7) for k in range(j + 1, 7)
        if is_occurrence(cl(1, 3, 2), T, (i, j, k))
    )
    assert count_occurrences(cl(1, 3, 2), T) == brute >= 1
    assert count_occurrences(cl(2, 1), Permutation.identity(5)) == 0
    occ = enumerate_occurrences(cl(1, 3, 2), T)
    assert [m.positions for m in occ] == sorted(m.positions for m in occ)


def test_dispatch_examples(T):
    assert match(Classical(P(1, 3, 2)), T).found
    assert not match(Consecutive(P(1, 2, 3)), T).found
    assert match(Boxed(P(1, 3, 2)), T).found
    assert match(Consecutive(P(1, 2)), T).algorithm == "consecutive"
    assert match(Boxed(P(1, 2)), T).algorithm == "boxed"
    assert match(Classical(P(1, 2, 3)), T).algorithm == "lis"
    assert match(Classical(P(1, 3, 2)), T).algorithm == "backtrack"
    assert match(Classical(P(1, 3, 2)), T, use_separable=True).algorithm == "separable"
    assert match(Vincular(P(1, 3, 2), frozenset({1})), T, algo="exhaustive").found


def test_dispatch_rejects_misfit_algorithms(T):
    with pytest.raises(AlgorithmMismatch):
        match(Classical(P(1, 3, 2)), T, algo="boxed")
    with pytest.raises(AlgorithmMismatch):
        match(Classical(P(1, 3, 2)), T, algo="lis")
    with pytest.raises(AlgorithmMismatch):
        match(Classical(P(2, 4, 1, 3)), T, algo="separable")
    with pytest.raises(ValueError):
        match(Classical(P(1)), T, algo="magic")


def test_five_cell_mesh_matches_oracle(texts_upto_5):
    r = MeshPattern(P(1, 3, 2), frozenset({(1, 0), (1, 2), (2, 3), (3, 0), (3, 1)}))
    for t in texts_upto_5:
        assert match_backtrack(r, t).found == match_exhaustive(r, t).found
