from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.combinatorics import Profile
from hurwitz.polynomiality import (
    FitFailureError,
    InsufficientSamplesError,
    MultivariatePolynomial,
    OnWallError,
    adjacent_signature,
    chamber_signature,
    degree_bound,
    fit_chamber_polynomial,
    sample_chamber,
    solve_exact,
    wall_crossing_direct,
    wall_crossing_formula,
)
from hurwitz.tropical import h_slice


def test_on_wall():
    with pytest.raises(OnWallError) as err:
        chamber_signature((1, 2, -1, -2))
    assert "1" in str(err.value)


def test_signature_sign_and_complement():
    sig = chamber_signature((1, 3, -2, -2))
    assert sig.sign((0,)) == 1
    assert sig.sign((1, 2, 3)) == -1


def test_same_chamber():
    assert chamber_signature((5, 1, -2, -4)) == chamber_signature((7, 1, -3, -5))
    assert chamber_signature((5, 1, -2, -4)).contains((7, 1, -3, -5))


def test_adjacent_signature_flips_one_class():
    sig = chamber_signature((3, -1, 2, -4))
    other = adjacent_signature(sig, (0, 1))
    assert other.sign((0, 1)) == -1
    assert other.sign((2, 3)) == 1
    assert sum(a != b for a, b in zip(sig.signs, other.signs)) == 1


def test_degree_bound():
    assert degree_bound(0, 4) == 1
    assert degree_bound(1, 3) == 4


def test_solve_exact():
    rows = [[1, 0], [0, 1], [1, 1]]
    assert solve_exact(rows, [2, 3, 5]) == [2, 3]
    with pytest.raises(FitFailureError):
        solve_exact(rows, [2, 3, 6])
    with pytest.raises(InsufficientSamplesError):
        solve_exact([[1, 1], [2, 2]], [1, 2])


def test_polynomial_json_round_trip():
    p = MultivariatePolynomial.from_dict(2, {(1, 0): Fraction(1, 2), (0, 0): 3, (0, 1): 0})
    assert p.degree == 1
    assert MultivariatePolynomial.from_json(2, p.to_json()) == p
    assert p.to_json() == [{"exponents": [0, 0], "coefficient": "3"}, {"exponents": [1, 0], "coefficient": "1/2"}]
    assert p((4, 7, -11)) == 5


def test_sampler_is_deterministic_and_in_chamber():
    sig = chamber_signature((3, 1, -2, -2))
    a = sample_chamber(sig, 8, 10, seed=5)
    assert a == sample_chamber(sig, 8, 10, seed=5)
    assert all(sig.contains(x) for x in a)
    assert len(set(a)) == 8


def test_sampler_reports_empty_chamber():
    # x1 < 0, x1 + x2 > 0 and x1 + x3 > 0 cannot hold with n = 3
    sig = adjacent_signature(chamber_signature((4, -1, -3)), (0,))
    with pytest.raises(InsufficientSamplesError):
        sample_chamber(sig, 3, 6)


def test_fit_g0_n4():
    res = fit_chamber_polynomial(0, (1, 1), chamber_signature((3, 1, -2, -2)))
    assert res.polynomial.degree <= 1
    # labelled count is x1 in this chamber
    assert res.polynomial.as_dict() == {(1, 0, 0): 1}
    fresh = (9, 2, -5, -6)
    assert res.polynomial(fresh) == h_slice(0, Profile(fresh), (1, 1), labeled_ends=True)


def test_fit_reports_heldout_and_seed():
    res = fit_chamber_polynomial(1, (2, 1), chamber_signature((3, -1, -2)), "strict", seed=4)
    assert 4 * len(res.heldout_samples) >= res.monomials
    doc = res.to_json()
    assert doc["seed"] == 4 and doc["degree"] <= 4
    assert all(res.polynomial(x) == v for x, v in res.heldout_samples)


def test_fit_g0_n2_has_no_polynomial_regime():
    sig = chamber_signature((3, -3))
    with pytest.raises(FitFailureError):
        fit_chamber_polynomial(0, (), sig)


def test_fit_is_deterministic():
    sig = chamber_signature((5, 1, -2, -4))
    a = fit_chamber_polynomial(1, (2, 2), sig, seed=11).to_json()
    b = fit_chamber_polynomial(1, (2, 2), sig, seed=11).to_json()
    assert a == b


@pytest.mark.parametrize("lam", [(2,), (1, 1)])
def test_wall_crossing_g0(lam):
    wc = wall_crossing_direct(0, lam, (0, 1), (3, -1, 2, -4))
    d = wc.difference
    for x in sample_chamber(chamber_signature((3, -1, 2, -4)), 10, 12, seed=3):
        assert wall_crossing_formula(0, x, (0, 1), lam) == d(x)


def test_wall_crossing_g0_lambda11_difference():
    wc = wall_crossing_direct(0, (1, 1), (0, 1), (3, -1, 2, -4))
    assert wc.difference.as_dict() == {(1, 0, 0): 1, (0, 1, 0): 1}


def test_wall_crossing_g1_n2_needs_negative_middle_genus():
    wc = wall_crossing_direct(1, (1, 1), (0,), (3, -3))
    for a in range(1, 7):
        x = (a, -a)
        assert wc.difference(x) == Fraction(a**3 - a, 12)
        assert wall_crossing_formula(1, x, (0,), (1, 1), allow_negative_middle_genus=True) == wc.difference(x)
    assert wall_crossing_formula(1, (3, -3), (0,), (1, 1)) != wc.difference((3, -3))


def test_wall_crossing_formula_guards():
    with pytest.raises(OnWallError):
        wall_crossing_formula(0, (1, -1, 2, -2), (0, 1), (1, 1))
    with pytest.raises(ValueError):
        wall_crossing_formula(0, (1, -3, 4, -2), (0, 1), (1, 1))


def test_unit_wall_only_uses_y_z_one():
    # x_I = 1: the compositions of 1 are just (1)
    x = (2, -1, 3, -4)
    assert wall_crossing_formula(0, x, (0, 1), (2,)) == 0


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 9), st.integers(1, 9), st.integers(1, 9))
def test_g0_n4_labelled_slice_is_x1_in_chamber(a, b, c):
    # chamber of (3,1,-2,-2): x1 largest, x1+x3 > 0, x1+x4 > 0, x2+x3 < 0, x2+x4 < 0 ...
    x = (a + b + c, b, -(a + b), -(b + c))
    if x[0] + x[1] + x[2] <= 0 or not chamber_signature((3, 1, -2, -2)).contains(x):
        return
    assert h_slice(0, Profile(x), (1, 1), labeled_ends=True) == x[0]
