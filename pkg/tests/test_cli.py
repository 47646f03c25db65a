import json
import os
import subprocess
import sys

import pytest

from demoivre.checks import A_10_6_LINES
from demoivre.cli import TABLE_HEADERS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_demoivre_symbolic(capsys):
    code, out, _ = run(capsys, "demoivre", "10", "6", "--symbolic")
    assert code == 0
    assert sorted(out.strip().splitlines()) == sorted(A_10_6_LINES)
    assert run(capsys, "demoivre", "10", "6")[1] == out


def test_demoivre_eval_and_gcd(capsys):
    assert run(capsys, "demoivre", "6", "3", "--eval", "1,1,1,1") == (0, "10\n", "")
    assert run(capsys, "demoivre", "10", "6", "--gcd") == (0, "3\n", "")
    code, out, _ = run(capsys, "demoivre", "4", "2", "--eval", "1/2,-1,3", "--json")
    assert json.loads(out) == {"n": 4, "k": 2, "a": ["1/2", "-1", "3"], "value": "4"}
    symbolic = json.loads(run(capsys, "demoivre", "5", "2", "--json")[1])
    assert symbolic["n"] == 5 and len(symbolic["terms"]) == 2


@pytest.mark.parametrize("argv", [
    ["demoivre", "6", "3", "--eval", "1,x"],
    ["demoivre", "6", "3", "--eval", "1/0"],
    ["demoivre", "-1", "3"],
    ["demoivre", "six", "3"],
    ["demoivre", "6", "3", "--gcd", "--eval", "1"],
    ["check", "nope"],
    ["table", "tau", "--max", "100000"],
    ["table", "gamma", "--max", "21"],
    ["seq", "tau", "--max", "300"],
    ["seq", "cyclotomic", "1"],
    ["seq", "bernoulli"],
    ["asym", "validate-I", "--n", "0"],
    ["asym", "validate-I", "--n", "10", "--alpha", "-1"],
    ["asym", "partition-coeffs", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_check_determinant(capsys):
    code, out, _ = run(capsys, "check", "determinant", "--max-n", "6")
    assert code == 0
    assert "FAIL" not in out


def test_check_sequences_has_inversions(capsys):
    code, out, _ = run(capsys, "check", "sequences", "--max-n", "12", "--json")
    assert code == 0
    data = json.loads(out)
    ids = [c["id"] for r in data["reports"] for c in r["cases"]]
    assert any(i.startswith("inversion-tau_from_p") for i in ids)
    assert any(i.startswith("inversion-p_from_tau") for i in ids)
    assert data["pass"] is True


def test_check_failure_exit_code(capsys, monkeypatch):
    from demoivre import checks
    original = checks.run_suite

    def broken(name, max_n, seed):
        reports = original(name, max_n, seed)
        case = reports[0].cases[0]
        reports[0].cases[0] = type(case)(case.id, case.inputs, case.source, False, case.lhs, case.rhs)
        return reports

    monkeypatch.setattr(checks, "run_suite", broken)
    assert run(capsys, "check", "determinant", "--max-n", "3")[0] == 1


def test_table_tau(capsys):
    code, out, _ = run(capsys, "table", "tau", "--max", "20")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 21
    assert lines[0].split() == ["n", "tau"]
    assert lines[2].split() == ["2", "-24"]


def test_table_partition_asym(capsys):
    data = json.loads(run(capsys, "table", "partition-asym", "--R", "3", "--format", "json")[1])
    assert [d["r"] for d in data] == [0, 1, 2]
    assert abs(data[1]["float"] + 0.443288) < 1e-6
    assert abs(data[2]["float"] - 0.0639279) < 1e-7
    assert data[1]["exact"] == "-1/2*sqrt6*pi^-1 - 1/144*sqrt6*pi"


def test_table_stirling_gamma_csv(capsys):
    code, out, _ = run(capsys, "table", "stirling", "--gamma", "--max", "6", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "m,gamma"
    assert lines[1:4] == ["0,1", "1,1/12", "2,1/288"]
    assert len(lines) == 8


@pytest.mark.parametrize("obj", ["partition", "tau", "bernoulli", "stirling", "cyclotomic", "gamma", "partition-asym"])
def test_table_csv_headers(capsys, obj):
    code, out, _ = run(capsys, "table", obj, "--max", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == ",".join(TABLE_HEADERS[obj])


def test_seq_commands(capsys):
    assert run(capsys, "seq", "tau", "--max", "5")[1] == "1 -24 252 -1472 4830\n"
    assert run(capsys, "seq", "partition", "10")[1] == "42\n"
    assert run(capsys, "seq", "cyclotomic", "6")[1] == "x^2 - x + 1\n"
    assert run(capsys, "seq", "bernoulli", "4")[1] == "-1/30\n"
    assert json.loads(run(capsys, "seq", "bernoulli", "2", "--json")[1]) == {"n": 2, "B": "1/6"}


def test_asym_commands(capsys):
    assert run(capsys, "asym", "stirling-gamma", "2")[1] == "1/288\n"
    for route in ("perron", "stx", "bernoulli", "zeta"):
        assert run(capsys, "asym", "stirling-gamma", "3", "--route", route)[1] == "-139/51840\n"
    data = json.loads(run(capsys, "asym", "partition-coeffs", "2", "--json")[1])
    assert data["coefficients"][1]["provenance"] == "float"
    report = json.loads(run(capsys, "asym", "validate-I", "--n", "50", "--R", "1", "--json")[1])
    assert report["rel_error"] < 0.1


def test_output_is_byte_identical(capsys):
    for argv in (["check", "series", "--max-n", "6"], ["table", "bernoulli", "--max", "12"], ["demoivre", "12", "5"]):
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first


def test_env_override_and_module_entry():
    env = dict(os.environ, DEMOIVRE_MAX_N="300")
    ok = subprocess.run([sys.executable, "-m", "demoivre", "seq", "tau", "--max", "250"],
                        capture_output=True, text=True, env=env)
    assert ok.returncode == 0 and len(ok.stdout.split()) == 250
    env["DEMOIVRE_MAX_N"] = "200"
    bad = subprocess.run([sys.executable, "-m", "demoivre", "seq", "tau", "--max", "250"],
                         capture_output=True, text=True, env=env)
    assert bad.returncode == 2 and "bound" in bad.stderr
