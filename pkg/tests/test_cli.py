import csv
import io
import json
import subprocess
import sys

import pytest

from qdft.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_mehta_csv(capsys):
    code, out, err = run(["mehta", "--N", "5"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 25
    assert {r["n"] for r in rows} == {"0", "1", "2", "3", "4"}
    assert max(float(r["residual"]) for r in rows) < 1e-8
    assert "[mehta]" in err


def test_mehta_even_skips_n_minus_one(capsys):
    code, out, _ = run(["mehta", "--N", "4"], capsys)
    assert code == 0
    assert {r["n"] for r in csv.DictReader(io.StringIO(out))} == {"0", "1", "2", "4"}


def test_mehta_json_is_finite(capsys):
    code, out, _ = run(["mehta", "--N", "8", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["rank"] == 8
    assert doc["summary"]["pass"] == 1
    assert "NaN" not in out and "Infinity" not in out


def test_mehta_bad_size(capsys):
    assert run(["mehta", "--N", "0"], capsys)[0] == 2


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["qeigen", "--N", "8", "--j", "1", "--M", "4", "--out", str(a)]) == 0
    assert main(["qeigen", "--N", "8", "--j", "1", "--M", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_qeigen_phases(capsys):
    code, out, _ = run(["qeigen", "--N", "8", "--j", "1", "--M", "4"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["phase"] for r in rows} == {"none", "pi/4", "pi/8"}
    quarter = [float(r["residual"]) for r in rows if r["phase"] == "pi/4"]
    eighth = [float(r["residual"]) for r in rows if r["phase"] == "pi/8"]
    assert max(quarter) < 1e-7
    assert max(eighth) > 1e-2
    assert {r["coprime"] for r in rows} == {"1"}


def test_qeigen_single_phase(capsys):
    code, out, _ = run(["qeigen", "--N", "5", "--j", "1", "--M", "3", "--phase", "pi/8", "--n-max", "2"], capsys)
    assert code == 0
    assert {r["phase"] for r in csv.DictReader(io.StringIO(out))} == {"none", "pi/8"}


def test_qeigen_non_coprime_flagged(capsys):
    code, out, _ = run(["qeigen", "--N", "5", "--j", "2", "--M", "4", "--n-max", "2"], capsys)
    assert code == 0
    assert {r["coprime"] for r in csv.DictReader(io.StringIO(out))} == {"0"}


@pytest.mark.parametrize("argv", [
    ["qeigen", "--N", "5", "--j", "1", "--M", "1"],
    ["qeigen", "--N", "5", "--j", "1"],
    ["qeigen", "--N", "5", "--j", "1", "--M", "3", "--q", "0.5"],
    ["weights", "--j", "2", "--M", "4"],
    ["verify", "--only", "nonsense"],
    ["mehta", "--N", "5", "--eps", "-1"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_weights_two(capsys):
    code, out, _ = run(["weights", "--j", "1", "--M", "2"], capsys)
    assert code == 0
    w = [r for r in csv.DictReader(io.StringIO(out)) if r["kind"] == "weight"]
    assert [float(r["re"]) for r in w] == pytest.approx([0.5, 0.5])


def test_verify_chebyshev_only(capsys):
    code, out, err = run(["verify", "--only", "chebyshev", "--M", "16"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 79  # coprime pairs with 2 <= M <= 16
    assert all(r["pass"] == "1" for r in rows)


def test_verify_commutation(capsys):
    code, out, _ = run(["verify", "--only", "commutation", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["checks"] == 18


def test_unreachable_eps(capsys):
    code, _, err = run(["mehta", "--N", "5", "--eps", "1e-30"], capsys)
    assert code == 1
    assert "k_max" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qdft.cli", "mehta", "--N", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("family,n,r,re,im")
