from itertools import permutations

import pytest

from permmatch.matchers import match_backtrack, match_exhaustive
from permmatch.patterns import Bivincular, Classical, MeshPattern, Vincular, cells_stat, cols_stat, rows_stat
from permmatch.perm import Permutation, standardize
from permmatch.reductions import (
    Graph,
    InstanceError,
    SppmInstance,
    clique_oracle,
    format_graph,
    format_sppm,
    guards_aligned,
    is_segregated,
    match_segregated,
    parse_graph,
    parse_sppm,
    reduce_clique_to_sppm,
    reduce_sppm_to_bivincular,
    reduce_sppm_to_mesh,
    reduce_sppm_to_vincular,
    verify_reduction_chain,
)

SIX_VERTEX_EDGES = [(1, 2), (1, 6), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 6)]
SIX_VERTEX_GRAPH = Graph(6, frozenset(SIX_VERTEX_EDGES))
K3 = Graph(3, frozenset({(1, 2), (2, 3), (1, 3)}))


def P(*v):
    return Permutation(v)


def sppm(p, t):
    return SppmInstance(P(1, 3, 2), P(5, 3, 1, 4, 2), p, t)


def test_sppm_examples():
    yes = match_segregated(sppm(2, 3))
    assert yes.found
    # 132 occurs in 53142 only as the values 1, 4, 2
    assert yes.witness.as_dict() == {1: 1, 2: 2, 3: 4}
    assert is_segregated(sppm(2, 3), yes.witness)
    assert not match_segregated(sppm(2, 4)).found
    assert match_segregated(sppm(2, 3), method="exhaustive").witness == yes.witness


def test_sppm_vacuous_thresholds_match_plain_containment():
    for pv in permutations(range(1, 4)):
        for tv in permutations(range(1, 6)):
            inst = SppmInstance(Permutation(pv), Permutation(tv), 3, 5)
            plain = match_exhaustive(Classical(inst.pattern).to_mesh(), inst.text).found
            assert match_segregated(inst).found == plain


def test_sppm_backtrack_matches_exhaustive():
    for pv in permutations(range(1, 4)):
        for tv in permutations(range(1, 6)):
            for p in range(1, 4):
                for t in range(1, 6):
                    inst = SppmInstance(Permutation(pv), Permutation(tv), p, t)
                    assert match_segregated(inst).found == match_segregated(inst, "exhaustive").found


def test_sppm_instance_validation():
    with pytest.raises(InstanceError):
        SppmInstance(P(1, 2), P(1, 2), 3, 1)
    with pytest.raises(InstanceError):
        SppmInstance(P(1, 2, 3), P(1, 2), 1, 1)
    with pytest.raises(InstanceError):
        SppmInstance(P(1), P(1, 2), 1, 3)


def test_clique_oracle_examples():
    assert clique_oracle(K3, 3) == (True, (1, 2, 3))
    assert clique_oracle(SIX_VERTEX_GRAPH, 3) == (True, (2, 3, 5))
    assert clique_oracle(Graph(4, frozenset()), 2) == (False, None)


def test_clique_reduction_six_vertex_graph():
    inst, trace = reduce_clique_to_sppm(SIX_VERTEX_GRAPH, 3)
    assert len(inst.pattern) == 20 and inst.p == 12
    assert len(inst.text) == 46 and inst.t == 28
    core = [v for v in inst.pattern.values if v <= inst.p]
    assert standardize(core).values == (4, 1, 8, 5, 12, 9, 2, 6, 3, 10, 7, 11)
    res = match_segregated(inst)
    assert res.found and guards_aligned(inst, res.witness)
    assert trace.pattern.blocks[0] == (2, 7)


def test_clique_reduction_errors():
    with pytest.raises(InstanceError):
        reduce_clique_to_sppm(K3, 4)
    with pytest.raises(InstanceError):
        reduce_clique_to_sppm(Graph(4, frozenset({(1, 2)})), 4)


def test_onward_examples():
    v, vt = reduce_sppm_to_vincular(sppm(2, 3))
    assert v == Vincular(P(3, 1, 4, 2), frozenset({0})) and vt.values == (4, 6, 3, 1, 5, 2)
    b, bt = reduce_sppm_to_bivincular(sppm(2, 3))
    assert b == Bivincular(P(3, 5, 1, 4, 2), frozenset(), frozenset({5}))
    assert bt.values == (4, 7, 6, 3, 1, 5, 2)
    m, mt = reduce_sppm_to_mesh(sppm(2, 3))
    assert m == MeshPattern(P(3, 1, 4, 2), frozenset({(0, 4)})) and mt.values == (4, 7, 6, 3, 1, 5, 2)
    assert (cols_stat(v), rows_stat(b), cells_stat(m)) == (1, 1, 1)
    for fn in (reduce_sppm_to_vincular, reduce_sppm_to_bivincular, reduce_sppm_to_mesh):
        for inst, want in ((sppm(2, 3), True), (sppm(2, 4), False)):
            pat, txt = fn(inst)
            assert match_backtrack(pat.to_mesh(), txt).found is want


def test_onward_reductions_exhaustive_small():
    for pv in permutations(range(1, 4)):
        for tv in permutations(range(1, 5)):
            for p in range(1, 4):
                for t in range(1, 5):
                    inst = SppmInstance(Permutation(pv), Permutation(tv), p, t)
                    truth = match_segregated(inst, "exhaustive").found
                    for fn in (reduce_sppm_to_vincular, reduce_sppm_to_bivincular, reduce_sppm_to_mesh):
                        pat, txt = fn(inst)
                        assert match_exhaustive(pat.to_mesh(), txt).found == truth, (fn.__name__, inst)


@pytest.mark.parametrize(
    "g, k, want",
    [(K3, 3, True), (SIX_VERTEX_GRAPH, 3, True), (Graph(4, frozenset({(1, 2), (2, 3), (3, 4)})), 3, False)],
)
def test_chain_examples(g, k, want):
    rep = verify_reduction_chain(g, k)
    assert rep.agree
    assert set(rep.answers.values()) == {want}


def test_graph_format_round_trip():
    text = format_graph(SIX_VERTEX_GRAPH)
    assert parse_graph("# comment\n" + text) == SIX_VERTEX_GRAPH
    for bad in ("", "3\n", "3 2\n1 2\n", "3 1\n1 1\n", "3 2\n1 2\n2 1\n", "3 1\n1 x\n", "2 1\n1 3\n"):
        with pytest.raises(InstanceError):
            parse_graph(bad)


def test_sppm_format_round_trip():
    inst = sppm(2, 3)
    assert parse_sppm(format_sppm(inst)) == inst
    for bad in ("pattern: 1\n", "pattern: 1\ntext: 1\np: 1\nt: 1\nt: 1\n", "foo: 1\n", "pattern: 1 1\ntext: 1\np: 1\nt: 1\n"):
        with pytest.raises(InstanceError):
            parse_sppm(bad)
