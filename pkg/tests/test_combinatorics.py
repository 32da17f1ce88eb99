from math import comb

import pytest
from hypothesis import given, strategies as st

from hurwitz.combinatorics import (
    Profile,
    multiset_aut,
    ordered_partitions,
    orderings_of,
    partitions_bounded,
    set_partitions,
    submultisets,
    unordered_partitions,
    weighted_compositions,
)


def test_profile_basics():
    x = Profile.parse("2,1,-2,-1")
    assert x.n == 4 and x.degree == 3
    assert x.plus == (2, 1) and x.minus == (2, 1)
    assert x.b(0) == 2 and x.b(1) == 4
    assert str(x) == "2,1,-2,-1"


@pytest.mark.parametrize("bad", [(1, 0, -1), (2, -1), ()])
def test_profile_rejects(bad):
    with pytest.raises(ValueError):
        Profile(bad)


def test_canonical_profile():
    assert Profile((-1, 1, -2, 2)).canonical().entries == (2, 1, -2, -1)


def test_ordered_partitions():
    assert ordered_partitions(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    with pytest.raises(ValueError):
        ordered_partitions(0)


@pytest.mark.parametrize("b", range(1, 9))
def test_ordered_partition_count(b):
    assert len(ordered_partitions(b)) == 2 ** (b - 1)


def test_unordered_partitions():
    assert unordered_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(unordered_partitions(10)) == 42
    assert unordered_partitions(0) == [()]


def test_partitions_bounded_len():
    assert list(partitions_bounded(4, max_len=2)) == [(4,), (3, 1), (2, 2)]


def test_orderings_of():
    assert sorted(orderings_of((2, 1, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]


def test_multiset_aut():
    assert multiset_aut((1, 1, 2, 2, 2)) == 12
    assert multiset_aut(()) == 1


def test_submultisets_each_once():
    splits = submultisets((1, 1, 2))
    assert len(splits) == 6
    assert len(set(splits)) == 6


def test_weighted_compositions():
    assert weighted_compositions(3, min_parts=2) == [(2, 1), (1, 1, 1)]


@given(st.integers(min_value=0, max_value=7))
def test_set_partitions_bell(n):
    bell = [1, 1, 2, 5, 15, 52, 203, 877]
    assert sum(1 for _ in set_partitions(list(range(n)))) == bell[n]


@given(st.lists(st.integers(min_value=1, max_value=3), max_size=6))
def test_orderings_count(parts):
    from math import factorial

    assert len(orderings_of(parts)) == factorial(len(parts)) // multiset_aut(parts)


def test_sum_of_binomials_matches_compositions():
    for b in range(1, 7):
        by_len = [sum(1 for c in ordered_partitions(b) if len(c) == k) for k in range(1, b + 1)]
        assert by_len == [comb(b - 1, k - 1) for k in range(1, b + 1)]
