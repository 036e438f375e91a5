import json
import math
import subprocess
import sys

import pytest

from gmheight.cli import main, run_command

POINT_SQRT = '{"field": "t^4-10*t^2+1", "x": "(t^3-9*t)/2", "y": "(11*t-t^3)/2"}'


def _json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def _mid(d):
    return float(d["value"]["mid"])


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["height", "--minpoly", "x^2-2"], 0.5 * math.log(2)),
        (["height", "--minpoly", "2*x-1"], math.log(2)),
        (["point-height", "--x", "2", "--y", "3"], math.log(3)),
        (["point-height", "--x", "1/2", "--y", "3"], math.log(6)),
        (["point-height", "--point", POINT_SQRT], 0.5 * math.log(3)),
        (["curve-height", "--curve", "x+y-5"], math.log(5)),
    ],
)
def test_values(capsys, argv, expected):
    code, d = _json(capsys, argv)
    assert code == 0
    assert abs(_mid(d) - expected) < 1e-9
    assert set(d) >= {"command", "inputs", "value", "details"}
    assert float(d["value"]["rad"]) < 1e-6


def test_json_schema_and_round_trip():
    r = run_command(["verify", "--kind", "theorem2", "--x", "2", "--y", "3", "--curve", "x+y-5"])
    d = json.loads(r.to_json())
    assert list(d) == ["command", "inputs", "value", "verdict", "details"]
    assert d["verdict"] == "pass" and r.exit_code == 0
    assert json.loads(json.dumps(d)) == d


def test_table_agrees_with_json():
    r = run_command(["height", "--minpoly", "x^2-x-1"])
    table = r.to_table()
    assert "command   height" in table
    mid = float(r.to_json_dict()["value"]["mid"])
    line = next(l for l in table.splitlines() if l.startswith("value"))
    assert abs(float(line.split()[1]) - mid) < 1e-15


def test_structured_outputs(capsys):
    assert _json(capsys, ["power-image", "--curve", "x+y-1", "--l", "2"])[1]["details"]["image"] == "x^2 - 2*x*y + y^2 - 2*x - 2*y + 1"
    assert _json(capsys, ["ecc", "--curve", "x^2-2", "--bound", "10"])[1]["details"]["primes"] == [2]
    d = _json(capsys, ["params", "--kind", "section_V1", "--omega", "16", "--D", "4"])[1]["details"]
    assert (d["T"], d["L"]) == (67, 1114)
    d = _json(capsys, ["siegel", "--x", "2", "--y", "3", "--T", "2"])[1]
    assert d["details"]["L"] == 5 and d["verdict"] == "pass"
    d = _json(capsys, ["obstruction", "--point", POINT_SQRT])[1]
    assert d["details"]["omega"] == 2
    assert _json(capsys, ["torsion", "--poly", "x^2+x+1"])[1]["details"]["all_roots_of_unity"] is True


def test_bound_command(capsys):
    code, d = _json(capsys, ["bound", "--kind", "theorem2", "--omega", "16"])
    assert code == 0
    assert abs(_mid(d) / 1.6260298882441371562676213912956e-23 - 1) < 1e-12


def test_exit_code_fail_for_known_discrepancy(capsys):
    code, d = _json(capsys, ["audit", "--suite", "fait-V1"])
    assert code == 1
    assert d["verdict"] == "fail"


def test_exit_code_pass_for_sieve(capsys):
    code, d = _json(capsys, ["audit", "--suite", "lemma-III2", "--to", "10000"])
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["height", "--minpoly", "x^2-$"],
        ["height", "--minpoly", "x^2-4"],
        ["height", "--minpoly", "x"],
        ["frobnicate"],
        ["bound", "--kind", "theorem2", "--omega", "0"],
        ["point-height", "--x", "0", "--y", "3"],
        ["height", "--minpoly", "x-1", "--prec", "512", "--max-prec", "256"],
        ["verify", "--kind", "prop_IV1", "--curve", "x*y-1"],
    ],
)
def test_exit_code_input_errors(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_diagnostic_names_token(capsys):
    code, d = _json(capsys, ["height", "--minpoly", "x^2-$"])
    assert code == 2
    assert d["details"]["token"] == "$"


def test_exit_code_undecided(capsys):
    assert main(["curve-height", "--curve", "x+y-1", "--tol", "1e-13"]) == 3


def test_prec_environment(monkeypatch):
    monkeypatch.setenv("GMHEIGHT_PREC", "64")
    r = run_command(["height", "--minpoly", "x^2-2"])
    assert r.value.rad_float() > 1e-40


def test_entry_point_subprocess():
    out = subprocess.run(
        [sys.executable, "-m", "gmheight.cli", "height", "--minpoly", "x-3", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0
    assert abs(float(json.loads(out.stdout)["value"]["mid"]) - math.log(3)) < 1e-15
