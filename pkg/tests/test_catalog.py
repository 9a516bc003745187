import dataclasses
import json
from fractions import Fraction

import pytest

from hypermod import catalog as catalog_mod
from hypermod.catalog import (
    CatalogError,
    MAIN_GROUP_SIZES,
    default_catalog,
    dump_catalog,
    load_catalog,
    validate_catalog,
)
from hypermod.exact import QuadFieldElem


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


def test_group_sizes_and_pair_count(cat):
    sizes = {gid: len(cat.group(gid).entries) for gid in MAIN_GROUP_SIZES}
    assert sizes == {"T1": 42, "T2": 23, "T3": 13}
    assert sum(cat.group(g).pairwise_count for g in MAIN_GROUP_SIZES) == 1192


def test_dump_load_round_trip(cat):
    text = dump_catalog(cat)
    again = load_catalog(text)
    assert again == cat
    assert dump_catalog(again) == text
    assert load_catalog(text.encode()) == cat


def test_parse_error_reports_position():
    with pytest.raises(CatalogError, match=r"line 2 column \d+"):
        load_catalog('{"groups": [\n  oops]}')


def test_unknown_series_id_rejected(cat):
    obj = json.loads(dump_catalog(cat))
    obj["groups"][0]["entries"][0]["base"] = "F7"
    with pytest.raises(CatalogError, match="unknown SeriesId"):
        load_catalog(json.dumps(obj))


def test_bad_exponent_denominator_rejected(cat):
    obj = json.loads(dump_catalog(cat))
    obj["groups"][0]["entries"][0]["prefactor"][0][1] = "1/3"
    with pytest.raises(CatalogError, match="denominator"):
        load_catalog(json.dumps(obj))


def test_dangling_references_rejected(cat):
    obj = json.loads(dump_catalog(cat))
    obj["cases"][0]["entries"].append("T1.99")
    with pytest.raises(CatalogError, match="dangling"):
        load_catalog(json.dumps(obj))
    obj = json.loads(dump_catalog(cat))
    obj["groups"][1]["entries"].append(obj["groups"][0]["entries"][0])
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog(json.dumps(obj))


def test_environment_override(cat, tmp_path, monkeypatch):
    small = dataclasses.replace(cat, groups=(cat.group("T3"),), cases=())
    path = tmp_path / "small.json"
    path.write_text(dump_catalog(small))
    monkeypatch.setenv(catalog_mod.CATALOG_ENV, str(path))
    assert catalog_mod.default_catalog_path() == path
    loaded = default_catalog()
    assert [g.id for g in loaded.groups] == ["T3"]
    report = validate_catalog(loaded)
    assert not report.ok
    assert "group T1 missing" in report.failures


def test_validation_of_shipped_catalog(cat):
    report = validate_catalog(cat)
    assert report.ok, report.failures
    assert report.pairwise_total == 1192
    boundary = [c for c in report.point_checks if c["boundary"]]
    assert [(c["case"], c["entry"]) for c in boundary] == [("THM9.1", "T1.21")]


def test_every_entry_normalized(cat):
    for g in cat.groups:
        for e in g.entries:
            assert e.prefactor.value_at_zero() == 1, e.id
            assert e.argument.monomial_power >= 1, e.id


def test_validation_flags_bad_entry(cat):
    g = cat.group("T3")
    e = g.entries[0]
    bad = dataclasses.replace(e, argument=dataclasses.replace(e.argument, powers=(0,) + e.argument.powers[1:]))
    broken = dataclasses.replace(g, entries=(bad,) + g.entries[1:])
    new = dataclasses.replace(cat, groups=tuple(broken if x.id == "T3" else x for x in cat.groups))
    report = validate_catalog(new)
    assert any("does not vanish" in f for f in report.failures)


def test_exact_argument_at_field_point(cat):
    # 1 - sqrt3/2 sends two of the entries to rational points
    case = cat.case("THM9.4b")
    p = case.point.field_value
    assert p == QuadFieldElem.of(3, 1, 1, Fraction(-1, 2))
    values = {eid: cat.entry(eid).argument.value_at(p) for eid in case.entries}
    assert values == {"T1.17": Fraction(1, 1458), "T1.20": Fraction(1, 256)}
