from fractions import Fraction
from math import comb, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.exact import (
    Ball,
    DomainError,
    FieldMismatchError,
    QuadFieldElem,
    ball_arith,
    ball_sum,
    binomial,
    format_rational,
    parse_rational,
    qf_arith,
    qf_to_ball,
    rat_arith,
)

rationals = st.builds(Fraction, st.integers(-999, 999), st.integers(1, 50))
FIELDS = [(5, 1), (3, 1), (2, 3), (3, 5), (6, 10)]


def _elems(tags, count):
    coords = st.tuples(rationals, rationals, rationals, rationals)
    return st.tuples(*[coords] * count).map(lambda cs: tuple(QuadFieldElem(*tags, c) for c in cs))


field_triples = st.sampled_from(FIELDS).flatmap(lambda t: _elems(t, 3))
field_elems = field_triples.map(lambda t: t[0])


def test_rational_dispatch():
    assert rat_arith(Fraction(1, 3), 2, "mul") == Fraction(2, 3)
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")


@pytest.mark.parametrize("n", range(0, 30))
def test_binomial_matches_stdlib(n):
    for k in range(-1, n + 2):
        assert binomial(n, k) == (comb(n, k) if 0 <= k <= n else 0)


@given(rationals)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@given(field_triples)
def test_field_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(field_triples)
def test_field_inverse(t):
    a = t[0]
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


def test_field_basis_products():
    x = QuadFieldElem.of(2, 3, 0, 1)
    y = QuadFieldElem.of(2, 3, 0, 0, 1)
    assert x * x == 2
    assert x * y == QuadFieldElem.of(2, 3, 0, 0, 0, 1)
    assert (x * y) ** 2 == 6
    # sqrt6 * sqrt10 = 2 sqrt15 in Q(sqrt6, sqrt10)
    u = QuadFieldElem.of(6, 10, 0, 1)
    v = QuadFieldElem.of(6, 10, 0, 0, 1)
    assert u * v == QuadFieldElem.of(6, 10, 0, 0, 0, 2)


def test_single_field_encoding():
    s5 = QuadFieldElem.of(5, 1, 0, 1)
    assert s5 * s5 == 5
    assert QuadFieldElem.of(5, 1, 1, 0, 2, 0) == QuadFieldElem.of(5, 1, 3)
    assert qf_arith(s5, s5, "add") == QuadFieldElem.of(5, 1, 0, 2)


def test_field_mismatch_and_validation():
    with pytest.raises(FieldMismatchError):
        QuadFieldElem.of(5, 1, 1) + QuadFieldElem.of(3, 1, 1)
    with pytest.raises(ValueError):
        QuadFieldElem.of(4, 1, 1)
    with pytest.raises(ValueError):
        QuadFieldElem.of(3, 3, 1)


@given(field_elems)
def test_field_json_round_trip(a):
    assert QuadFieldElem.from_json(a.to_json()) == a


@given(field_elems)
@settings(max_examples=50)
def test_field_enclosure_contains_square(a):
    b = qf_to_ball(a, 96)
    # squaring the enclosure must overlap the enclosure of the exact square
    assert b.mul(b, 96).overlaps(qf_to_ball(a * a, 96))


def test_sqrt5_enclosure_against_isqrt():
    b = qf_to_ball(QuadFieldElem.of(5, 1, 0, 1), 200)
    scale = 10**50
    lo = Fraction(isqrt(5 * scale * scale), scale)
    hi = lo + Fraction(1, scale)
    assert lo - b.rad <= b.mid <= hi + b.rad
    assert b.width < Fraction(1, 2**190)


@given(rationals, rationals)
def test_ball_ops_contain_exact(x, y):
    bx, by = Ball.exact(x, 64), Ball.exact(y, 64)
    assert bx.add(by, 64).contains(x + y)
    assert bx.sub(by, 64).contains(x - y)
    assert bx.mul(by, 64).contains(x * y)
    if y != 0:
        assert bx.div(by, 64).contains(x / y)


@given(st.fractions(min_value=Fraction(1, 100), max_value=1000, max_denominator=100))
def test_ball_sqrt_contains_root(x):
    r = Ball.exact(x, 80).sqrt(80)
    assert r.lower >= 0
    assert r.lower**2 <= x <= r.upper**2


def test_ball_domain_errors():
    with pytest.raises(DomainError):
        Ball(Fraction(0), Fraction(1, 8)).sqrt()
    with pytest.raises(DomainError):
        Ball.exact(1).div(Ball(Fraction(0), Fraction(1)))
    with pytest.raises(ValueError):
        Ball(Fraction(0), Fraction(-1))


def test_ball_pow_halfint_and_dispatch():
    b = ball_arith(Ball.exact(4), Fraction(3, 2), "pow_halfint", 64)
    assert b.contains(8)
    assert ball_arith(Ball.exact(9), None, "sqrt", 64).contains(3)
    with pytest.raises(ValueError):
        ball_arith(Ball.exact(1), 1, "mod")


def test_ball_sum_and_json():
    s = ball_sum([Ball.exact(Fraction(1, 3), 70)] * 3, 70)
    assert s.contains(1)
    assert Ball.from_json(s.to_json()) == s
    assert Ball.exact(Fraction(1, 8)).rad == 0
