import dataclasses
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermod.catalog import default_catalog
from hypermod.sequences import FAMILY_PARAMS, params_for
from hypermod.verifier import (
    binomial_pairs,
    expand_entry,
    expand_many,
    verify_clausen,
    verify_group,
    verify_substitution_case,
    verify_translate_formal,
    verify_zs,
)

from oracles import naive_compose, naive_inverse, naive_mul, naive_power


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


def _with_entry(group, entry):
    return dataclasses.replace(group, entries=tuple(entry if e.id == entry.id else e for e in group.entries))


def test_entry_against_naive_construction(cat):
    # T2.04: (1-4p+8p^3-8p^4)^(-1/2) f2(p^6 (1-p)^2 / (1-4p+8p^3-8p^4)^2); compare squares
    n = 24
    quartic = [1, -4, 0, 8, -8]
    arg = naive_mul([0] * 6 + [1], naive_power([1, -1], 2, n), n)
    arg = naive_mul(arg, naive_inverse(naive_power(quartic, 2, n), n), n)
    f2 = [comb(4 * k, 2 * k) * comb(2 * k, k) for k in range(n + 1)]
    outer = naive_compose(f2, arg, n)
    want = naive_mul(outer, outer, n)
    got = expand_entry(cat.entry("T2.04"), n)
    assert naive_mul(naive_mul(list(got.coeffs), list(got.coeffs), n), quartic, n) == want


def test_common_heads(cat):
    assert verify_group(cat.group("T1"), 10).head[:3] == (1, 4, 16)
    assert verify_group(cat.group("T2"), 10).head[:2] == (1, 2)
    assert verify_group(cat.group("T3"), 10).head[:3] == (1, 2, 6)


def test_as_printed_scale_fails_at_sixth_power(cat):
    g = cat.group("T2")
    e = g.entry("T2.04")
    printed = dataclasses.replace(e, argument=dataclasses.replace(e.argument, scale=Fraction(64)))
    rep = verify_group(_with_entry(g, printed), 20)
    assert rep.status == "failed"
    m = rep.first_mismatch
    assert (m.entry_b, m.power, m.coeff_a, m.coeff_b) == ("T2.04", 6, 520, 1276)


@given(st.integers(0, 41), st.sampled_from([-1, 2, Fraction(1, 2)]))
@settings(max_examples=12, deadline=None)
def test_fault_injection_on_scale(cat, index, factor):
    """Perturbing one entry's scale is always caught at its first nonzero power."""
    g = cat.group("T1")
    e = g.entries[index]
    bad = dataclasses.replace(e, argument=dataclasses.replace(e.argument, scale=e.argument.scale * factor))
    rep = verify_group(_with_entry(g, bad), 12)
    assert rep.status == "failed"
    assert rep.first_mismatch.power <= e.argument.monomial_power
    assert e.id in (rep.first_mismatch.entry_a, rep.first_mismatch.entry_b)


def test_report_json_shape(cat):
    rep = verify_group(cat.group("T3"), 8)
    js = rep.to_json()
    assert set(js) >= {"group", "order", "status", "pairwise_count", "first_mismatch", "head"}
    assert js["status"] == "certified" and js["first_mismatch"] is None and js["pairwise_count"] == 78


def test_parallel_expansion_matches_serial(cat):
    entries = cat.group("T3").entries[:4]
    assert expand_many(entries, 15, "p", jobs=2) == expand_many(entries, 15, "p", jobs=1)


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_clausen(level):
    assert verify_clausen(level, 30).certified


@pytest.mark.parametrize("family", sorted(FAMILY_PARAMS))
def test_zs(family):
    rep = verify_zs(params_for(family), 30)
    assert rep.certified
    assert set(rep.sides) == {"f^2", "F-form", "G-form"}


@pytest.mark.parametrize("gid", [f"EX8.{i}" for i in range(1, 8)] + ["EX1"])
def test_example_groups(gid, cat):
    assert verify_substitution_case(gid, 25, cat).certified


def test_substitution_case_rejects_main_groups(cat):
    with pytest.raises(KeyError):
        verify_substitution_case("T1", 5, cat)


def test_translation_identity(cat):
    assert verify_translate_formal(cat.entry("T1.02"), cat.entry("T1.11"), Fraction(3, 28), 25).certified
    assert verify_translate_formal(cat.entry("T1.01"), cat.entry("T1.01"), Fraction(1, 5), 20).certified


def test_binomial_pairs():
    assert [binomial_pairs(k) for k in (42, 23, 13)] == [861, 253, 78]


def test_negative_order_rejected(cat):
    with pytest.raises(ValueError):
        verify_group(cat.group("T3"), -1)
