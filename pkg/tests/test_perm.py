from fractions import Fraction

import pytest

from permmatch.perm import (
    DuplicateValue,
    EmptyPermutation,
    NonIntegerToken,
    Permutation,
    ValueOutOfRange,
    build_grid,
    complement,
    inverse,
    is_order_isomorphic,
    lrun,
    parse_permutation,
    rectangle_count,
    reverse,
    runs,
    standardize,
)


def test_parse_examples():
    assert parse_permutation("1 6 4 2 5 3").values == (1, 6, 4, 2, 5, 3)
    assert parse_permutation("1").values == (1,)
    assert parse_permutation("  3\t1  2 \n").values == (3, 1, 2)


@pytest.mark.parametrize(
    "line, exc",
    [("2 2 1", DuplicateValue), ("1 3", ValueOutOfRange), ("0 1", ValueOutOfRange),
     ("1 x", NonIntegerToken), ("1.0", NonIntegerToken), ("", EmptyPermutation)],
)
def test_parse_errors(line, exc):
    with pytest.raises(exc):
        parse_permutation(line)


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        parse_permutation("2 2")


def test_standardize_rationals():
    seq = [Fraction(s) for s in "1.9 1 2.9 2 3.9 3 1.1 2.1 1.2 3.1 2.2 3.2".split()]
    assert standardize(seq).values == (4, 1, 8, 5, 12, 9, 2, 6, 3, 10, 7, 11)


def test_standardize_small():
    assert standardize([5, 2, 9]).values == (2, 1, 3)
    assert standardize([1, 2, 3]).values == (1, 2, 3)


def test_standardize_rejects_floats_and_ties():
    with pytest.raises(TypeError):
        standardize([1.5, 2])
    with pytest.raises(DuplicateValue):
        standardize([1, Fraction(2, 2)])


def test_symmetries():
    assert reverse(Permutation((1, 6, 4, 2, 5, 3))).values == (3, 5, 2, 4, 6, 1)
    assert complement(Permutation((1, 3, 2))).values == (3, 1, 2)
    assert inverse(Permutation((1, 2, 3))).values == (1, 2, 3)
    assert inverse(Permutation((2, 3, 1))).values == (3, 1, 2)


def test_runs_share_boundaries(T):
    assert runs(T) == [(1, 6), (6, 4, 2), (2, 5), (5, 3)]
    assert lrun(T) == 3
    assert lrun(Permutation.identity(5)) == 5
    assert lrun(Permutation((1,))) == 1


def test_order_isomorphism():
    assert is_order_isomorphic([2, 4, 3], [1, 3, 2])
    assert is_order_isomorphic([1], [9])
    assert not is_order_isomorphic([1, 2], [2, 1])
    with pytest.raises(ValueError):
        is_order_isomorphic([1], [1, 2])


def test_rectangle_examples(T):
    g = build_grid(T)
    assert rectangle_count(g, 0, 7, 0, 7) == 6
    assert rectangle_count(g, 1, 3, 1, 7) == 1
    assert rectangle_count(g, 2, 3, 0, 7) == 0
    assert g.rectangle_count(0, 7, 0, 7) == 6
    with pytest.raises(ValueError):
        rectangle_count(g, 0, 8, 0, 7)


def test_accessors(T):
    assert T.at(2) == 6
    assert T.positions()[6] == 2
    assert str(T) == "1 6 4 2 5 3"
    assert not T.is_identity() and Permutation.identity(3).is_identity()
