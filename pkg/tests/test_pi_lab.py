import dataclasses
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.catalog import default_catalog
from hypermod.exact import Ball
from hypermod.pi_lab import (
    PI_CASES,
    PiLabError,
    boundary_variation,
    chebyshev_3,
    crvz_sum,
    matches_decimal,
    pi_reference,
    point_ball,
    refine_root,
    sturm_count_above,
    sum_at,
    sum_boundary,
    sum_interior,
    verify_equivalence_case,
    verify_pi_formula,
)
from hypermod.sequences import series_coeff

from oracles import PI_110

PI = Fraction(PI_110)
PI_ERR = Fraction(1, 10**110)
LN2_30 = Fraction("0.693147180559945309417232121458")


@pytest.mark.parametrize("formula", ["machin", "hutton"])
@pytest.mark.parametrize("digits", [10, 50, 100])
def test_pi_reference_against_published_digits(formula, digits):
    b = pi_reference(digits, formula)
    assert b.lower - PI_ERR <= PI <= b.upper + PI_ERR
    assert b.width < Fraction(1, 10**digits)


def test_pi_reference_widths_shrink():
    widths = [pi_reference(d).width for d in (10, 20, 40, 80)]
    assert widths == sorted(widths, reverse=True)
    with pytest.raises(PiLabError):
        pi_reference(10, "leibniz")


def test_chebyshev_values():
    assert [chebyshev_3(n) for n in range(5)] == [1, 3, 17, 99, 577]


@given(st.fractions(min_value=0, max_value=1, max_denominator=20))
@settings(max_examples=30)
def test_crvz_on_point_mass(x):
    # moments x^k of a point mass: sum (-1)^k x^k = 1/(1+x), error <= 1/T_n(3)
    n = 12
    approx = crvz_sum([x**k for k in range(n)], n)
    assert abs(approx - 1 / (1 + x)) <= Fraction(1, chebyshev_3(n))


def test_crvz_on_uniform_measure():
    n = 30
    approx = crvz_sum([Fraction(1, k + 1) for k in range(n)], n)
    assert abs(approx - LN2_30) <= Fraction(1, chebyshev_3(n)) + Fraction(1, 10**30)


def test_boundary_sum_lies_between_partial_sums():
    """The alternating boundary series has decreasing terms, so consecutive partial sums bracket it."""
    lam = Fraction(1, 4)
    terms = [Fraction(comb(2 * k, k) ** 3 * (4 * k + 1), 4 * 64**k) * (-1) ** k for k in range(401)]
    s_even = sum(terms[:400])
    s_odd = sum(terms[:401])
    lo, hi = min(s_even, s_odd), max(s_even, s_odd)
    ball, n = sum_boundary("F4", lam, 20)
    assert lo <= ball.lower and ball.upper <= hi
    # and the accelerated value is the constant 1/(2 pi)
    assert abs(ball.mid - Fraction(1, 2) / PI) <= ball.rad + PI_ERR
    assert n < 40


def test_boundary_variation_only_for_f4():
    assert boundary_variation("F4", Fraction(1, 4)) == Fraction(3, 4)
    with pytest.raises(PiLabError):
        boundary_variation("F1", Fraction(1, 4))


def test_interior_sum_against_direct_partial_sum():
    x0, lam = Fraction(1, 4096), Fraction(5, 42)
    ball, n = sum_interior("F4", x0, lam, 30)
    direct = sum(series_coeff("F4", k) * (k + lam) * x0**k for k in range(120))
    assert abs(ball.mid - direct) <= ball.rad + Fraction(1, 10**60)
    assert ball.width < Fraction(1, 10**30)


def test_sum_at_rejects_points_outside():
    with pytest.raises(PiLabError):
        sum_at("F4", Fraction(1, 50), Fraction(1, 4), 10)


@pytest.mark.parametrize("cid", list(PI_CASES))
def test_pi_cases_certify(cid):
    digits = min(PI_CASES[cid].digits, 30)
    rep = verify_pi_formula(cid, digits)
    assert rep.certified, rep.to_json()
    assert set(rep.to_json()) >= {"case", "digits", "exact_checks", "ball_checks"}


def test_first_term_equals_lambda():
    case = PI_CASES["EQ9.1"]
    assert case.lam == Fraction(3, 28)
    assert series_coeff("F1", 0) * (0 + case.lam) == Fraction(3, 28)


@pytest.mark.parametrize("cid", ["EQ1.1", "EQ9.1", "EQ9.3"])
def test_wrong_constant_fails(cid):
    case = PI_CASES[cid]
    bad = dataclasses.replace(case, rhs=case.rhs * (1 + Fraction(1, 10**15)))
    assert not verify_pi_formula(bad, 20).certified


def test_wrong_lambda_fails():
    case = PI_CASES["EQ9.6"]
    assert not verify_pi_formula(dataclasses.replace(case, lam=Fraction(5, 33)), 20).certified


def test_unknown_case():
    with pytest.raises(KeyError):
        verify_pi_formula("EQ0.0")


def test_matches_decimal():
    b = Ball(Fraction("0.04127594"), Fraction(1, 10**12))
    assert matches_decimal(b, "0.0412759")
    assert not matches_decimal(b, "0.0412760")
    assert not matches_decimal(Ball(Fraction("0.04127595"), Fraction(1, 10**6)), "0.0412759")


def test_sturm_counts():
    assert sturm_count_above([-2, 0, 1], Fraction(0)) == 1
    assert sturm_count_above([-2, 0, 1], Fraction(-5)) == 2
    # (x-1)^2 (x-2): distinct roots are counted once
    assert sturm_count_above([-2, 5, -4, 1], Fraction(0)) == 2
    assert sturm_count_above([-2, 5, -4, 1], Fraction(3, 2)) == 1
    assert sturm_count_above([1, 0, 1], Fraction(-10)) == 0


def test_refine_root_brackets_root():
    # w = 2p + 1/(2p) = 3 has root p = (3 - sqrt5)/4 in (0, 1/2)
    lo, hi = refine_root([-3, 1], Fraction(1, 10), Fraction(1, 4), 100)
    assert hi - lo <= Fraction(1, 2**100)
    for p in (lo, hi):
        assert p > 0
    # (4p - 3)^2 decreases on (0, 3/4)
    assert (4 * hi - 3) ** 2 <= 5 <= (4 * lo - 3) ** 2


@pytest.mark.parametrize("cid,decimal", [("THM9.4", "0.00431456"), ("THM9.5", "0.0412759"), ("THM9.6", "0.000245523")])
def test_root_points_match_printed_decimals(cid, decimal):
    point = default_catalog().case(cid).point
    assert matches_decimal(point_ball(point, 64), decimal)


def test_translation_replay_at_first_point():
    rep = verify_equivalence_case("THM9.1", 20)
    assert rep.certified
    names = {c["name"] for c in rep.exact_checks}
    assert {"T1.02->T1.11 x = 1/8000", "T1.02->T1.11 y = 1/614656", "T1.02->T1.11 lambda_B = 3/40",
            "T1.02->T1.11 multiplier_sq = 337500/117649", "T1.11->T1.21 y = -1/64",
            "T1.11->T1.21 lambda_B = 1/4"} <= names


@pytest.mark.parametrize("cid", ["THM9.3", "THM9.4", "THM9.4b", "THM9.5", "THM9.6", "THM9.7"])
def test_equivalence_cases_certify(cid):
    assert verify_equivalence_case(cid, 20).certified
