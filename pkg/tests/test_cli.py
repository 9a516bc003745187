import json
import os
import subprocess
import sys

import pytest

from hypermod import catalog as catalog_mod
from hypermod.catalog import default_catalog, dump_catalog
from hypermod.cli import run


def _run_json(capsys, *argv):
    code = run([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_list(capsys):
    code, payload = _run_json(capsys, "list")
    assert code == 0
    assert [g["id"] for g in payload["groups"]][:3] == ["T1", "T2", "T3"]
    assert "THM9.1" in payload["cases"] and "EQ9.3" in payload["pi_series"]


def test_verify_group_json(capsys):
    code, payload = _run_json(capsys, "verify", "--group", "T3", "--terms", "10", "--jobs", "1")
    assert code == 0
    assert payload["status"] == "certified" and payload["pairwise_count"] == 78


def test_verify_jobs_do_not_change_output(capsys):
    _, one = _run_json(capsys, "verify", "--group", "EX8.2", "--terms", "12", "--jobs", "1")
    _, two = _run_json(capsys, "verify", "--group", "EX8.2", "--terms", "12", "--jobs", "2")
    assert one == two


def test_failing_catalog_gives_exit_1(capsys, tmp_path):
    obj = json.loads(dump_catalog(default_catalog()))
    t2 = next(g for g in obj["groups"] if g["id"] == "T2")
    entry = next(e for e in t2["entries"] if e["id"] == "T2.04")
    entry["argument"]["scale"] = "64"
    path = tmp_path / "printed.json"
    path.write_text(json.dumps(obj))
    code, payload = _run_json(capsys, "verify", "--group", "T2", "--terms", "10", "--catalog", str(path))
    assert code == 1
    assert payload["first_mismatch"]["power"] == 6
    # the override does not leak past the call
    assert os.environ.get(catalog_mod.CATALOG_ENV) != str(path)


@pytest.mark.parametrize("argv", [
    ["verify", "--group", "T9"],
    ["verify", "--group", "T1", "--bogus"],
    ["clausen", "--level", "7"],
    ["pi", "--case", "EQ0.0"],
    ["pi", "--case", "EQ1.1", "--digits", "0"],
    ["qcheck", "--id", "nope"],
    ["equiv", "--case", "THM0"],
    ["fit-ode", "--entry", "T9.99"],
    ["list", "--jobs", "0"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_missing_and_malformed_catalog(tmp_path, capsys):
    assert run(["list", "--catalog", str(tmp_path / "absent.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{\n nope")
    assert run(["list", "--catalog", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_fit_ode_prints_recurrence(capsys):
    code, payload = _run_json(capsys, "fit-ode", "--entry", "T2.01")
    assert code == 0
    assert payload["ode"]["order"] == 2
    assert payload["recurrence"]["n-polys"][0] == ["1", "2", "1"]


def test_fit_ode_not_found_is_failure(capsys):
    assert run(["fit-ode", "--entry", "T1.01", "--terms", "40", "--max-order", "1", "--max-degree", "2"]) == 1


def test_clausen_zs_qcheck_pi_equiv(capsys, tmp_path):
    assert run(["clausen", "--level", "3", "--terms", "20"]) == 0
    assert run(["zs", "--case", "c", "--terms", "20"]) == 0
    assert run(["qcheck", "--id", "H7.b", "--terms", "20"]) == 0
    out = tmp_path / "pi.json"
    assert run(["pi", "--case", "EQ9.6", "--digits", "20", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == "certified"
    assert run(["equiv", "--case", "THM9.7", "--digits", "15"]) == 0
    text = capsys.readouterr().out
    assert "certified" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypermod", "list"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("T1")
