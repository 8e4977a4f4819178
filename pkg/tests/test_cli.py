import json
import subprocess
import sys

import numpy as np
import pytest

from jplse.cli import main


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def series(tmp_path):
    p = tmp_path / "y.csv"
    p.write_text("0\n0\n1\n1\n0\n0\n")
    return p


def test_fit(series, tmp_path, capsys):
    out = tmp_path / "seg.json"
    assert run("fit", "--input", series, "--gamma", 0.01, "--out", out) == 0
    d = json.loads(out.read_text())
    assert d["changepoints"] == [2, 4] and d["objective"] == pytest.approx(0.02)


def test_fit_refuses_bad_gamma(series, capsys):
    assert run("fit", "--input", series, "--gamma", 0) == 2
    assert "gamma" in capsys.readouterr().err


def test_missing_file_is_validation_error(tmp_path):
    assert run("fit", "--input", tmp_path / "nope.csv", "--gamma", 1) == 2


def test_deltas(series, tmp_path):
    out = tmp_path / "d.csv"
    assert run("deltas", "--input", series, "--kmax", 3, "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,delta,jumps,changepoints" and len(lines) == 5
    k, delta, jumps, cps = lines[3].split(",")
    assert (k, jumps, cps) == ("2", "2", "2 4") and float(delta) == pytest.approx(0, abs=1e-15)


def test_path_and_metrics(series, tmp_path, capsys):
    p = tmp_path / "p.json"
    c = tmp_path / "p.csv"
    assert run("path", "--input", series, "--out", p, "--csv", c) == 0
    d = json.loads(p.read_text())
    assert len(d["pieces"]) == len(d["critical_gammas"]) + 1
    assert c.read_text().splitlines()[0] == "i,critical_gamma,zeta,k"
    assert run("metrics", "--a", p, "--b", p, "--horizon", 100) == 0
    assert json.loads(capsys.readouterr().out)["distance"] == 0
    assert run("metrics", "--a", p, "--b", p) == 2


def test_target_path_blocks(tmp_path, capsys):
    out = tmp_path / "dpath.json"
    assert run("target-path", "--signal", "blocks", "--n", 64, "--out", out) == 0
    assert "off the grid" in capsys.readouterr().err
    assert len(json.loads(out.read_text())["critical_gammas"]) == 15
    assert run("target-path", "--signal", "blocks", "--n", 64, "--strict") == 2
    assert "N = 100" in capsys.readouterr().err
    assert run("target-path", "--signal", "blocks", "--n", 100, "--strict", "--out", out) == 0
    assert len(json.loads(out.read_text())["critical_gammas"]) == 8


def test_metrics_step_functions(tmp_path, capsys):
    a = tmp_path / "f.json"
    b = tmp_path / "g.json"
    a.write_text(json.dumps({"breakpoints": [0.5], "values": [0, 1]}))
    b.write_text(json.dumps({"breakpoints": [0.6], "values": [0, 1]}))
    assert run("metrics", "--a", a, "--b", b, "--metric", "skorokhod", "--tol", 1e-6) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["distance"] == pytest.approx(np.log(1.25), abs=1e-6) and "witness" in d
    for m, v in (("l2", np.sqrt(0.1)), ("sup", 1.0), ("hausdorff", 0.1)):
        assert run("metrics", "--a", a, "--b", b, "--metric", m) == 0
        assert json.loads(capsys.readouterr().out)["distance"] == pytest.approx(v)
    b.write_text("{")
    assert run("metrics", "--a", a, "--b", b) == 2


def test_diag(tmp_path, capsys):
    out = tmp_path / "diag.csv"
    assert run("diag", "--model", "gaussian:1.0", "--n", 256, "--seeds", 5, "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,seed,M_n,M_dyadic,beta_n,pass" and len(lines) == 6
    assert "pass rate" in capsys.readouterr().err
    assert run("diag", "--model", "gaussian:0", "--n", 10) == 2


def test_experiment(tmp_path):
    cfg = tmp_path / "exp.toml"
    cfg.write_text(
        'seed = 1\nn_list = [16, 32]\nreplicates = 2\nmetrics = ["L2", "HAUSDORFF_JUMPS", "PATH"]\n'
        '[signal]\nkind = "blocks"\nsnr = 7.0\n[noise]\nkind = "gaussian"\nsigma = 1.0\n'
        '[gamma]\nrule = "schedule"\nc = 0.25\n'
    )
    out = tmp_path / "report"
    assert run("experiment", "--config", cfg, "--out", out) == 0
    for name in ("rows.csv", "summary.csv", "summary.json", "table.csv", "path_distance.csv", "snapshots.csv"):
        assert (out / name).exists()
    cfg.write_text('n_list = [16]\n[gamma]\nrule = "schedule"\nlog_power = 0.0\n')
    assert run("experiment", "--config", cfg, "--out", out) == 2


def test_console_entry_and_usage_errors():
    r = subprocess.run([sys.executable, "-m", "jplse.cli", "fit"], capture_output=True, text=True)
    assert r.returncode == 2
    r = subprocess.run([sys.executable, "-m", "jplse.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("jplse")
