from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.series import (
    PowerSeries,
    SeriesError,
    clausen_branch,
    divide_laurent,
    ps_arith,
    ps_compose,
    ps_pow_rational,
    ps_reversion,
)

from oracles import naive_compose, naive_inverse, naive_mul, naive_power

small = st.integers(min_value=-6, max_value=6)


def series_of(length, first=None):
    head = [st.just(first)] if first is not None else [small]
    return st.tuples(*head, *[small] * (length - 1)).map(lambda cs: PowerSeries("p", cs))


@given(series_of(9), series_of(9))
def test_product_matches_naive(a, b):
    assert list((a * b).coeffs) == naive_mul(list(a.coeffs), list(b.coeffs), 8)


@given(series_of(9, first=1))
def test_inverse_matches_naive(a):
    assert list(a.inverse().coeffs) == naive_inverse(list(a.coeffs), 8)
    assert a * a.inverse() == PowerSeries.const(1, 8)


@given(series_of(8), series_of(8, first=0))
def test_compose_matches_naive(outer, inner):
    got = ps_compose(outer, inner)
    want = naive_compose(list(outer.coeffs), list(inner.coeffs), 7)
    assert list(got.coeffs) == want[: got.order + 1]


@given(series_of(10, first=1), st.sampled_from([Fraction(1, 2), Fraction(-1, 2), Fraction(1, 4), Fraction(-3, 4)]))
def test_rational_power_raised_back(a, e):
    root = ps_pow_rational(a, e)
    k = e.denominator
    back = root ** k
    target = a ** abs(e.numerator)
    if e < 0:
        target = target.inverse()
    assert back == target


@given(series_of(8, first=1), st.integers(min_value=-3, max_value=4))
def test_integer_power(a, k):
    want = naive_power(list(a.coeffs), abs(k), 7)
    if k < 0:
        want = naive_inverse(want, 7)
    assert list((a**k).coeffs) == want


@given(st.tuples(st.integers(1, 5), *[small] * 7))
@settings(max_examples=60)
def test_reversion_is_compositional_inverse(cs):
    b = PowerSeries("p", (0,) + cs)
    r = ps_reversion(b)
    assert ps_compose(b, r) == PowerSeries.monomial(1, b.order)
    assert ps_compose(r, b) == PowerSeries.monomial(1, b.order)


def test_sqrt_of_one_minus_4x():
    # (1-4x)^(-1/2) = sum C(2n,n) x^n
    s = ps_pow_rational(PowerSeries.polynomial([1, -4], 10, "x"), Fraction(-1, 2))
    assert s.coeffs == (1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756)


def test_clausen_branch_solves_quadratic():
    big = PowerSeries.polynomial([0, 1, 3, -2], 12)
    x = clausen_branch(big)
    assert (x * (1 - x)).scale(4) == big
    assert x.coeffs[0] == 0


def test_divide_laurent():
    p = PowerSeries.monomial(1, 10)
    num = p * PowerSeries.polynomial([2, 1], 10)
    den = p * PowerSeries.polynomial([1, -1], 10)
    q = divide_laurent(num, den)
    assert q.order == 9
    assert q == PowerSeries.polynomial([2, 1], 9) / PowerSeries.polynomial([1, -1], 9)
    with pytest.raises(SeriesError):
        divide_laurent(PowerSeries.const(1, 5), p.truncate(5))


def test_errors():
    with pytest.raises(SeriesError):
        PowerSeries("p", ())
    with pytest.raises(SeriesError):
        PowerSeries.const(1, 3, "p") + PowerSeries.const(1, 3, "q")
    with pytest.raises(SeriesError):
        ps_pow_rational(PowerSeries.polynomial([1, 1], 4), Fraction(1, 3))
    with pytest.raises(SeriesError):
        ps_pow_rational(PowerSeries.polynomial([2, 1], 4), Fraction(1, 2))
    with pytest.raises(SeriesError):
        ps_compose(PowerSeries.const(1, 3), PowerSeries.const(1, 3))
    with pytest.raises(SeriesError):
        PowerSeries.monomial(1, 4).inverse()
    with pytest.raises(ValueError):
        ps_arith(PowerSeries.const(1, 2), PowerSeries.const(1, 2), "pow")


def test_truncated_order_and_json():
    a = PowerSeries.polynomial([1, Fraction(1, 3), -2], 6)
    b = PowerSeries.polynomial([1, 1], 3)
    assert (a * b).order == 3
    assert PowerSeries.from_json(a.to_json()) == a
    assert a.theta().coeffs[:3] == (0, Fraction(1, 3), -4)
