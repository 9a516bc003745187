from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypermod.sequences import (
    FAMILY_PARAMS,
    F_closed_form,
    SERIES_IDS,
    UnknownSeriesError,
    ZagierParams,
    base_series,
    coefficient_ratio_bound,
    convergence_radius,
    gen_binomial,
    hyper_coeff,
    params_for,
    quartic_sum_H,
    series_coeff,
    table1_oracle,
    trinomial_square_sum,
    zagier_T,
    zagier_t,
)

from oracles import apery_like_t, multinomial_square_sum

# f_l in binomial form, written out with math.comb
F_SMALL = {
    1: lambda n: comb(6 * n, 3 * n) * comb(3 * n, n),
    2: lambda n: comb(4 * n, 2 * n) * comb(2 * n, n),
    3: lambda n: comb(3 * n, n) * comb(2 * n, n),
    4: lambda n: comb(2 * n, n) ** 2,
}


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_hypergeometric_coefficients(level):
    for n in range(25):
        assert hyper_coeff(level, "f", n) == F_SMALL[level](n)
        assert hyper_coeff(level, "F", n) == F_SMALL[level](n) * comb(2 * n, n)
        assert F_closed_form(level, n) == hyper_coeff(level, "F", n)


@pytest.mark.parametrize("family", sorted(FAMILY_PARAMS))
def test_t_against_independent_recurrence(family):
    a, b, g = FAMILY_PARAMS[family]
    p = params_for(family)
    assert [zagier_t(p, n) for n in range(40)] == apery_like_t(a, b, g, 40)


def test_known_heads():
    # Apery numbers for zeta(2), Franel numbers, sums of squared trinomials
    assert [zagier_t(params_for("5"), n) for n in range(6)] == [1, 3, 19, 147, 1251, 11253]
    assert [zagier_t(params_for("6c"), n) for n in range(6)] == [1, 2, 10, 56, 346, 2252]
    assert [zagier_t(params_for("6b"), n) for n in range(6)] == [1, 3, 15, 93, 639, 4653]
    assert [quartic_sum_H(n) for n in range(5)] == [1, 2, 18, 164, 1810]


@pytest.mark.parametrize("n", range(0, 15))
def test_trinomial_square_sum(n):
    assert trinomial_square_sum(n) == multinomial_square_sum(n) == zagier_t(params_for("6b"), n)


@given(st.sampled_from(sorted(FAMILY_PARAMS)), st.integers(0, 30), st.sampled_from(["t", "T"]))
def test_recurrences_match_binomial_sums(family, n, which):
    p = params_for(family)
    value = zagier_t(p, n) if which == "t" else zagier_T(p, n)
    assert value == table1_oracle(FAMILY_PARAMS[family], which, n)


@given(st.integers(-20, 20), st.integers(0, 8))
def test_gen_binomial(m, k):
    if m >= 0:
        assert gen_binomial(m, k) == comb(m, k)
    else:
        # upper negation
        assert gen_binomial(m, k) == (-1) ** k * comb(k - m - 1, k)


def test_assembled_series():
    assert base_series("F4", 4, "t").coeffs == (1, 8, 216, 8000, 343000)
    assert series_coeff("F5", 3) == comb(6, 3) * 147
    for sid in SERIES_IDS:
        assert base_series(sid, 3).coeffs[0] == 1
    with pytest.raises(UnknownSeriesError):
        base_series("F9", 3)
    with pytest.raises(ValueError):
        ZagierParams(1, 2, 3)
    with pytest.raises(ValueError):
        zagier_t(params_for("5"), -1)


@pytest.mark.parametrize("level,c", [(1, 432), (2, 64), (3, 27), (4, 16)])
def test_radius_and_ratio_bound(level, c):
    sid = f"F{level}"
    assert convergence_radius(sid) == Fraction(1, 4 * c)
    bound = coefficient_ratio_bound(sid)
    ratios = [Fraction(series_coeff(sid, n + 1), series_coeff(sid, n)) for n in range(60)]
    assert max(ratios) <= bound
    # the ratios approach the bound, so it cannot be tightened by a constant factor
    assert ratios[-1] > Fraction(9, 10) * bound
