import json
import random
from fractions import Fraction
from importlib import resources
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.catalog import default_catalog
from hypermod.odefit import (
    FitError,
    LinearODE,
    Recurrence,
    fit_linear_ode,
    integer_nullspace,
    ode_residual,
    ode_to_recurrence,
    required_length,
    zagier_ode,
)
from hypermod.sequences import FAMILY_PARAMS, base_series
from hypermod.series import PowerSeries
from hypermod.verifier import expand_entry


def _golden():
    return json.loads((resources.files("hypermod") / "data" / "common_odes.json").read_text())


def test_central_binomial_first_order():
    s = PowerSeries("x", tuple(comb(2 * n, n) for n in range(30)))
    ode = fit_linear_ode(s, 2, 3)
    # (1-4x) y' - 2 y = 0
    assert ode.polys == ((-2,), (1, -4))
    rec = ode_to_recurrence(ode)
    assert rec.generate([1], 10) == [comb(2 * n, n) for n in range(10)]


@pytest.mark.parametrize("family", sorted(FAMILY_PARAMS))
def test_recovers_second_order_operator(family):
    a, b, g = FAMILY_PARAMS[family]
    s = base_series(f"f{family}", 40)
    ode = fit_linear_ode(s, 2, 3)
    assert ode == zagier_ode(a, b, g)
    assert ode_residual(ode, s).is_zero()
    rec = ode_to_recurrence(ode)
    assert rec.generate(list(s.coeffs[:1]), 41) == list(s.coeffs)


@given(st.lists(st.integers(-50, 50), min_size=40, max_size=40))
@settings(max_examples=25, deadline=None)
def test_random_series_has_no_small_operator(cs):
    s = PowerSeries("x", tuple(cs))
    ode = fit_linear_ode(s, 1, 2)
    # anything returned must genuinely annihilate the data
    assert ode is None or ode_residual(ode, s).is_zero()


def test_random_series_rejected_deterministic():
    rng = random.Random(7)
    s = PowerSeries("x", tuple(rng.randint(-10**6, 10**6) for _ in range(60)))
    assert fit_linear_ode(s, 2, 5) is None


def test_short_series_raises():
    with pytest.raises(FitError):
        fit_linear_ode(PowerSeries("x", (1, 2, 3)), 2, 5)
    assert required_length(2, 5) == 18 + 2 + 5


def test_nullspace_is_exact():
    rows = [[1, 2, 3], [2, 4, 6], [1, 1, 1]]
    basis = integer_nullspace(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)


def test_first_theorem2_entry_fit():
    s = expand_entry(default_catalog().entry("T2.01"), 49)
    ode = fit_linear_ode(s, 2, 5)
    printed = LinearODE(((-2, 0, 48, -64), (1, -10, 0, 80, -80), (0, 1, -5, 0, 20, -16)))
    assert ode.normalized() == printed.normalized()
    rec = ode_to_recurrence(ode)
    assert [[int(c) for c in p] for p in rec.polys] == [[1, 2, 1], [-2, -5, -5], [0], [8, -20, 20], [-16, 32, -16]]
    assert rec.generate(list(s.coeffs[:3]), 50) == list(s.coeffs)


@pytest.mark.parametrize("gid,order", [("T1", 3), ("T2", 2), ("T3", 3)])
def test_golden_operators_annihilate_entries(gid, order):
    gold = _golden()[gid]
    ode = LinearODE.from_json(gold["ode"])
    assert ode.order == order
    group = default_catalog().group(gid)
    for entry in group.entries[:: max(1, len(group.entries) // 6)]:
        assert ode_residual(ode, expand_entry(entry, 45)).is_zero(), entry.id
    rec = Recurrence.from_json(gold["recurrence"])
    assert rec == ode_to_recurrence(ode)


def test_golden_operator_refits():
    gold = LinearODE.from_json(_golden()["T3"]["ode"])
    s = expand_entry(default_catalog().group("T3").entries[0], 80)
    assert fit_linear_ode(s, 3, 16) == gold


def test_json_round_trip_and_validation():
    ode = zagier_ode(7, 2, 8)
    assert LinearODE.from_json(ode.to_json()) == ode
    with pytest.raises(FitError):
        LinearODE.from_json({"order": 5, "polys": ode.to_json()["polys"]})
    with pytest.raises(FitError):
        LinearODE(((0,), (0, 0)))
    rec = ode_to_recurrence(ode)
    assert Recurrence.from_json(rec.to_json()) == rec
    assert rec.coefficient(0, 0) == Fraction(1)
