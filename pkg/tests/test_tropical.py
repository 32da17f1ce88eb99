from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.combinatorics import Profile, ordered_partitions, unordered_partitions
from hurwitz.symgroup import FactorizationQuery, count_factorizations
from hurwitz.tropical import (
    MONOTONE,
    STRICT,
    CombinatorialCover,
    Variant,
    core_value,
    cover_contribution,
    enumerate_covers,
    export_cover,
    h_slice,
    h_total,
    mixed_layout,
    mixed_slice,
    mixed_total,
    vec_h,
    vertex_multiplicity,
)

X = Profile((2, 1, -2, -1))


def test_trivalent_genus_zero_vertex_is_one():
    assert vertex_multiplicity((3,), (1, 2), 0) == 1
    assert vertex_multiplicity((1, 1), (2,), 0) == 1


def test_genus_one_two_valent_vertex():
    # (lam-1)! (c(1) + [w^2] S(aw)^2 / S(w)) = -1/24 + (2a^2 - 1)/24
    for a in range(1, 6):
        assert vertex_multiplicity((a,), (a,), 1) == Fraction(a * a - 1, 12)


def test_four_valent_genus_zero_vertex():
    # lambda = 2, genus 0, four ends: 1! * [w^0] = 1
    assert vertex_multiplicity((1, 2), (2, 1), 0) == 1


def test_vertex_multiplicity_even_in_weights():
    assert vertex_multiplicity((2,), (2,), 2) == vertex_multiplicity((-2,), (2,), 2)


def test_vertex_multiplicity_rejects():
    with pytest.raises(ValueError):
        vertex_multiplicity((1,), (1,), 0)  # lambda = 0
    with pytest.raises(ValueError):
        vertex_multiplicity((1,), (1,), -1)


@pytest.mark.parametrize(
    "lam,variant,expected",
    [((2,), MONOTONE, 1), ((1, 1), MONOTONE, 2), ((2,), STRICT, -1), ((1, 1), STRICT, 2)],
)
def test_hand_slices(lam, variant, expected):
    assert vec_h(0, X, lam, variant) == expected


def test_hand_totals():
    assert h_total(0, X, MONOTONE) == 3
    assert h_total(0, X, STRICT) == 1
    assert h_total(1, Profile((2, -2)), MONOTONE, connected=False) == Fraction(1, 2)
    assert h_total(1, Profile((2, -2)), STRICT, connected=False) == 0
    assert h_total(1, Profile((1, -1)), MONOTONE, connected=False) == 0


def test_straight_edge_weight():
    assert h_total(0, Profile((2, -2))) == Fraction(1, 2)
    assert core_value((3, -3), ()) == Fraction(1, 3)


def test_end_symmetry_division():
    x = Profile((1, 1, -1, -1))
    assert h_total(0, x) == Fraction(1, 2)
    assert h_total(0, x, labeled_ends=True) == 2


def covers_sum(x, lam, variant, connected, labeled_ends=False):
    return sum(
        (cover_contribution(c, variant, labeled_ends=labeled_ends) for c in enumerate_covers(x, lam, connected)),
        Fraction(0),
    )


CASES = [
    (0, (2, 1, -2, -1)),
    (0, (1, 1, -1, -1)),
    (0, (3, -1, -1, -1)),
    (1, (2, -2)),
    (1, (3, -2, -1)),
    (1, (2, 1, -3)),
    (2, (2, -2)),
]


@pytest.mark.parametrize("g,x", CASES)
@pytest.mark.parametrize("variant", [MONOTONE, STRICT])
@pytest.mark.parametrize("connected", [True, False])
def test_enumeration_matches_dp(g, x, variant, connected):
    p = Profile(x)
    for lam in ordered_partitions(p.b(g)):
        assert covers_sum(x, lam, variant, connected) == vec_h(g, p, lam, variant, connected)


@pytest.mark.parametrize("g,x", CASES)
def test_covers_are_valid_and_distinct(g, x):
    p = Profile(x)
    for connected in (True, False):
        for lam in ordered_partitions(p.b(g)):
            covers = list(enumerate_covers(x, lam, connected))
            keys = [c.canonical_key() for c in covers]
            assert len(keys) == len(set(keys))
            for c in covers:
                c.validate()
                assert c.genus() == g
                if connected:
                    assert c.is_connected()


def test_cover_export_format():
    c = next(iter(enumerate_covers((2, 1, -2, -1), (1, 1))))
    text = export_cover(c)
    assert text.startswith("# profile 2,1,-2,-1 lambda 1,1\n")
    assert "vertex v0 genus=0 lambda=1" in text
    assert sum(1 for line in text.splitlines() if line.startswith("edge")) == len(c.edges) + 4


def test_validate_catches_unbalanced_vertex():
    bad = CombinatorialCover((2, -2), (1,), (0,), (), ((0, 2), (0, 1)))
    with pytest.raises(AssertionError):
        bad.validate()


@pytest.mark.parametrize("g,x", CASES)
@pytest.mark.parametrize("variant", ["monotone", "strict"])
def test_sum_rule(g, x, variant):
    p = Profile(x)
    total = sum((h_slice(g, p, lam, variant) for lam in unordered_partitions(p.b(g))), Fraction(0))
    assert total == h_total(g, p, variant)


@pytest.mark.parametrize("g,x", CASES)
def test_lambda_reversal_symmetry(g, x):
    p = Profile(x)
    for lam in ordered_partitions(p.b(g)):
        assert vec_h(g, p, lam) == vec_h(g, p, lam[::-1])


def test_wrong_lambda_size():
    with pytest.raises(ValueError):
        vec_h(0, X, (1,))


def test_variant_parse():
    assert Variant.parse("strict") == STRICT
    with pytest.raises(ValueError):
        Variant("weird")


def test_mixed_layout():
    lam, mask = mixed_layout((2,), (1, 1), 1)
    assert lam == (2, 1, 1, 1)
    assert mask == (True, False, False, False)
    lam, mask = mixed_layout((2,), (1,), 1, ("usual", "weak", "strict"))
    assert lam == (1, 1, 2) and mask == (False, False, True)
    with pytest.raises(ValueError):
        mixed_layout((), (), 0, ("strict", "weak"))


def test_mixed_plain_value():
    assert mixed_slice(0, X, (), ()) == 4


@pytest.mark.parametrize("g,x", [(0, (2, 1, -2, -1)), (0, (3, -2, -1)), (1, (2, -1, -1)), (0, (2, 2, -3, -1))])
def test_mixed_totals_against_oracle(g, x):
    p = Profile(x)
    b = p.b(g)
    for pp in range(b + 1):
        for q in range(b - pp + 1):
            oracle = count_factorizations(FactorizationQuery(g, p, "mixed", True, pp, q))
            assert mixed_total(g, p, pp, q) == oracle


@pytest.mark.parametrize("order", [("strict", "weak", "usual"), ("usual", "strict", "weak"), ("weak", "usual", "strict")])
def test_mixed_slice_independent_of_block_order(order):
    x = Profile((3, 1, -2, -2))
    assert mixed_slice(1, x, (2,), (1,), order=order) == mixed_slice(1, x, (2,), (1,))


profile_strategy = st.tuples(
    st.lists(st.integers(1, 3), min_size=1, max_size=2),
    st.lists(st.integers(1, 3), min_size=1, max_size=2),
).filter(lambda pm: sum(pm[0]) == sum(pm[1]))


@settings(max_examples=30, deadline=None)
@given(profile_strategy, st.integers(0, 1), st.randoms(use_true_random=False))
def test_totals_invariant_under_relabelling(pm, g, rnd):
    plus, minus = pm
    entries = list(plus) + [-m for m in minus]
    shuffled = entries[:]
    rnd.shuffle(shuffled)
    assert h_total(g, Profile(tuple(entries))) == h_total(g, Profile(tuple(shuffled)))


@settings(max_examples=20, deadline=None)
@given(profile_strategy, st.integers(0, 1))
def test_tropical_matches_oracle_random(pm, g):
    x = Profile.from_parts(*pm)
    for variant in ("monotone", "strict"):
        assert h_total(g, x, variant) == count_factorizations(FactorizationQuery(g, x, variant))


@settings(max_examples=20, deadline=None)
@given(profile_strategy)
def test_reversing_profile_direction(pm):
    # swapping the roles of 0 and infinity reverses lambda; totals are unchanged
    plus, minus = pm
    x = Profile.from_parts(plus, minus)
    y = Profile.from_parts(minus, plus)
    assert h_total(0, x) == h_total(0, y)
