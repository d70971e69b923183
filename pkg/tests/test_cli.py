import csv
import json
import subprocess
import sys

import pytest

from schrodinger.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_axioms(capsys):
    code, out = run(capsys, "verify-axioms", "--n", "2")
    assert code == 0 and json.loads(out)["violations"] == 0
    code, out = run(capsys, "verify-axioms", "--n", "2", "--inject-fault")
    assert code == 1 and json.loads(out)["first_counterexample"]["check"] == "matrix_oracle"


def test_normal_order(capsys):
    assert run(capsys, "normal-order", "e f^2")[1] == "f^2 e + 2*f h - 2*f\n"
    assert run(capsys, "normal-order", "--zdot", "1", "x(1) y(1)")[1] == "y(1) x(1) + 1\n"
    assert run(capsys, "normal-order", "--localized", "finv f")[1] == "1\n"


def test_theta_and_phi(capsys):
    assert run(capsys, "theta", "--n", "2", "--s", "1", "h")[1] == "-t(2) d(2) - t(1) d(1) - 1\n"
    assert run(capsys, "theta", "--zdot", "2", "x(1)")[1] == "(S)*d(1)\n"
    assert "e (x) 1" in run(capsys, "theta", "--s", "1", "--phi", "e")[1]


def test_gamma(capsys):
    assert run(capsys, "gamma", "--b", "1/2", "--gen", "e", "--n", "2")[1] == "-1/2*f^-1 h + e - 3/4*f^-1\n"
    code, out = run(capsys, "gamma", "--b", "-2", "--check")
    assert code == 0 and json.loads(out)["passed"]


def test_verma_csv_round_trip(capsys, tmp_path):
    path = tmp_path / "dims.csv"
    code, _ = run(capsys, "verma", "--n", "2", "--V", "natural", "--lambda", "3", "--zdot", "1",
                  "--depth", "4", "--out", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert [r["dimension"] for r in rows] == ["2", "4", "8", "12", "18"]
    assert rows[2] == {"weight": "1", "offset": "-2", "dimension": "8"}


def test_verma_json(capsys):
    code, out = run(capsys, "verma", "--n", "1", "--lambda", "1/3", "--zdot", "1", "--depth", "3",
                    "--format", "json")
    data = json.loads(out)
    assert data["rows"][0] == {"weight": "1/3", "offset": 0, "dimension": 1}


def test_singular_accepts_negative_lambda(capsys):
    code, out = run(capsys, "singular", "--n", "1", "--lambda", "-1/2", "--zdot", "1", "--depth", "10")
    data = json.loads(out)
    assert code == 0
    assert data["singular"][0]["weight"] == "-5/2"
    assert data["singular"][0]["vectors"] == [{"f (x) v1": "1", "y(1)^2 (x) v1": "1/2"}] or \
        data["singular"][0]["vectors"] == [{"y(1)^2 (x) v1": "1/2", "f (x) v1": "1"}]


def test_character_table(capsys):
    code, out = run(capsys, "character-table", "--n", "1", "--lambda", "-1/2", "--zdot", "1", "--depth", "6")
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["k", "dim_M", "dim_tensor", "equal"]
    assert [r[1] for r in rows[1:]] == ["1", "1", "2", "2", "3", "3", "4"]
    code, out = run(capsys, "character-table", "--n", "3", "--lambda", "-3/2", "--zdot", "1",
                    "--depth", "4", "--simple")
    assert [r.split(",")[1] for r in out.splitlines()[1:]] == ["1", "3", "6", "10", "15"]
    code, out = run(capsys, "character-table", "--n", "2", "--V", "natural", "--lambda", "1",
                    "--zdot", "1", "--depth", "0")
    assert out.splitlines()[1:] == ["0,2,2,true"]


def test_classify(capsys):
    assert json.loads(run(capsys, "classify", "--n", "2", "--zdot", "1", "--e", "nilpotent")[1])["family"] == \
        "HighestWeight"
    assert json.loads(run(capsys, "classify", "--n", "3", "--zdot", "0")[1])["family"] == "TensorOfFiniteSoAndSl2"
    code, out = run(capsys, "classify", "--n", "1", "--zdot", "1", "--e", "nilpotent", "--f", "nilpotent")
    assert code == 2 and "error" in json.loads(out)


def test_dense(capsys):
    code, out = run(capsys, "dense", "--k", "2", "--zdot", "1", "--format", "json")
    data = json.loads(out)
    assert {r["dimension"] for r in data["rows"]} == {3}
    assert data["probe"] == {"e": "injective", "f": "injective"}


def test_verify_all_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _ = run(capsys, "verify-all", "--n", "2", "--zdot", "1", "--depth", "6", "--seed", "7",
                  "--out", str(path))
    rep = json.loads(path.read_text())
    assert code == 0 and rep["passed"] and rep["config"]["seed"] == 7
    code, out = run(capsys, "verify-all", "--n", "2", "--inject-fault")
    rep = json.loads(out)
    assert code == 1 and "structure" in rep["failing"]
    code, out = run(capsys, "verify-all", "--n", "1", "--zdot", "0")
    assert code == 0 and "zero_charge_witness" in [r["invariant"] for r in json.loads(out)["results"]]


def test_output_is_deterministic(capsys):
    a = run(capsys, "verify-all", "--n", "1", "--seed", "3")[1]
    b = run(capsys, "verify-all", "--n", "1", "--seed", "3")[1]
    strip = lambda s: [{k: v for k, v in r.items() if k != "seconds"} for r in json.loads(s)["results"]]
    assert [{k: v for k, v in r.items() if k != "detail"} for r in strip(a)] == \
        [{k: v for k, v in r.items() if k != "detail"} for r in strip(b)]


def test_bad_config_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["verma", "--n", "0", "--lambda", "1", "--zdot", "1"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verma", "--lambda", "1", "--format", "xml"])
    assert main(["verma", "--lambda", "1/", "--zdot", "1"]) == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "schrodinger.cli", "normal-order", "e f"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "f e + h\n"
