import json
import subprocess
import sys

import pytest

from hyperrel.cli import main


def run_json(capsys, *argv):
    assert main(list(argv) + ["--json"]) == 0
    return json.loads(capsys.readouterr().out)


def test_exact_triangle(capsys):
    report = run_json(capsys, "exact", "--gen", "complete-graph:3", "--p", "0.5")
    assert report["estimate"] == pytest.approx(0.5, abs=1e-12)
    assert report["algorithm"] == "exact" and report["delta"] is None


def test_alg1_is_reproducible(capsys):
    argv = ["alg1", "--gen", "complete-graph:3", "--p", "0.5", "--eps", "0.1", "--seed", "7", "--profile", "desk"]
    a = run_json(capsys, *argv)
    b = run_json(capsys, *argv)
    a.pop("elapsed_ms")
    b.pop("elapsed_ms")
    assert a == b and a["seed"] == 7


def test_mc_on_file_at_zero(capsys, tmp_path):
    path = tmp_path / "g.hgr"
    path.write_text("3 3\n1 2\n2 3\n1 3\n")
    report = run_json(capsys, "mc", "--input", str(path), "--p", "0", "--trials", "500")
    assert report["estimate"] == 0.0 and report["samples_used"] == 500


def test_alg2_report(capsys):
    report = run_json(capsys, "alg2", "--gen", "sunflower:5", "--p", "0.2", "--delta", "0.001", "--seed", "3")
    assert report["delta"] == 0.001 and report["profile"] == "desk"
    assert report["estimate"] > 0


def test_env_seed_overrides_flag(capsys, monkeypatch):
    monkeypatch.setenv("HYPERREL_SEED", "11")
    report = run_json(capsys, "mc", "--gen", "sunflower:4", "--p", "0.5", "--seed", "5")
    assert report["seed"] == 11


def test_text_output_and_out_file(capsys, tmp_path):
    assert main(["exact", "--gen", "sunflower:4", "--p", "0.3"]) == 0
    assert "estimate" in capsys.readouterr().out
    out = tmp_path / "r.json"
    assert main(["exact", "--gen", "sunflower:4", "--p", "0.3", "--json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["algorithm"] == "exact"


def test_gen_writes_hmetis(capsys, tmp_path):
    assert main(["gen", "--gen", "sunflower:3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "3 3"
    out = tmp_path / "s.hgr"
    assert main(["gen", "--gen", "random-uniform:5,4,3", "--seed", "2", "--out", str(out)]) == 0
    assert out.read_text().startswith("4 5\n")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["exact", "--gen", "sunflower:4"],
        ["exact", "--p", "0.1"],
        ["exact", "--gen", "sunflower:4", "--input", "x", "--p", "0.1"],
        ["exact", "--gen", "sunflower:4", "--p", "1.5"],
        ["exact", "--gen", "bogus:4", "--p", "0.1"],
        ["exact", "--input", "/nonexistent.hgr", "--p", "0.1"],
        ["alg2", "--gen", "sunflower:4", "--p", "0.1"],
        ["alg1", "--gen", "sunflower:4", "--p", "0.1", "--profile", "huge"],
        ["mc", "--gen", "sunflower:4", "--p", "0.1", "--seed", "-3"],
        ["alg1", "--gen", "sunflower:4", "--p", "0.1", "--eps", "2"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert "error" in capsys.readouterr().err


def test_parse_error_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.hgr"
    path.write_text("1 2\n1 1\n")
    assert main(["exact", "--input", str(path), "--p", "0.1"]) == 1
    assert "line 2" in capsys.readouterr().err


def test_estimation_errors_exit_2(capsys):
    assert main(["exact", "--gen", "complete-graph:6", "--p", "0.1", "--max-wedges", "5"]) == 2
    assert "estimation failed" in capsys.readouterr().err


def test_bad_env_seed_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("HYPERREL_SEED", "banana")
    assert main(["mc", "--gen", "sunflower:4", "--p", "0.5"]) == 1


def test_selftest_and_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyperrel", "selftest"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "checks passed" in proc.stdout
