"""Command-line interface: exit codes and output formats."""

from __future__ import annotations

import subprocess

import numpy as np
import pytest

from fracchemo import CONFIG_MAGIC
from fracchemo.cli import main

from test_harness import config_text

PARAMS_B = "\n".join([
    CONFIG_MAGIC,
    "params.dim = 1",
    "params.alpha = 0.75",
    "params.chi1 = 1",
    "params.chi2 = 1",
    "params.lambda1 = 4",
    "params.lambda2 = 2",
    "params.mu1 = 1",
    "params.mu2 = 1",
    "params.a = 1",
    "params.b = 1",
    "params.gamma = 2",
    "params.k = 1",
]) + "\n"


@pytest.fixture()
def params_file(tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text(PARAMS_B, encoding="utf-8")
    return path


def test_classify_prints_verdict_and_checks(params_file, capsys):
    rc = main(["classify", "--params", str(params_file), "--u0-sup", "1.5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "boundedness_case = a" in out
    assert "C0 = 2" in out
    assert "speed_lower = 0.4" in out
    assert "kind,case,name,satisfied,margin" in out


def test_classify_writes_checks_csv(params_file, tmp_path, capsys):
    out_file = tmp_path / "checks.csv"
    rc = main([
        "classify", "--params", str(params_file),
        "--u0-sup", "1.5", "--out", str(out_file),
    ])
    out = capsys.readouterr().out
    assert rc == 0
    text = out_file.read_text()
    assert text.startswith("kind,case,name,satisfied,margin")
    assert "kind,case,name,satisfied,margin" not in out


def test_constants_output(params_file, capsys):
    rc = main(["constants", "--params", str(params_file), "--u0-sup", "1.5"])
    out = capsys.readouterr().out.splitlines()
    assert rc == 0
    assert "M = 0.5" in out
    assert "H = 1" in out
    assert "u_star = 1" in out
    assert "v_star = 0.25" in out
    assert "w_star = 0.5" in out
    assert "C0[a] = 2" in out
    assert any(line.startswith("M1 = 2.12132034355964") for line in out)


def test_params_file_errors(tmp_path, capsys):
    rc = main(["classify", "--params", str(tmp_path / "nope.cfg"),
               "--u0-sup", "1"])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err

    bad = tmp_path / "bad.cfg"
    bad.write_text(PARAMS_B.replace("params.alpha = 0.75",
                                    "params.alpha = 0.3"), encoding="utf-8")
    rc = main(["classify", "--params", str(bad), "--u0-sup", "1"])
    assert rc == 2
    assert "alpha" in capsys.readouterr().err

    partial = tmp_path / "partial.cfg"
    partial.write_text(CONFIG_MAGIC + "\nparams.dim = 1\n", encoding="utf-8")
    rc = main(["constants", "--params", str(partial)])
    assert rc == 2
    assert "missing required keys" in capsys.readouterr().err


def test_simulate_pass_and_outputs(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(config_text(**{
        "initial.kind": "perturbed_equilibrium", "initial.value": None,
        "stepper.t_end": "2", "checks": "boundedness",
    }), encoding="utf-8")
    out_dir = tmp_path / "out"
    rc = main(["simulate", "--config", str(cfg), "--out", str(out_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("fracchemo suite report")
    assert "[boundedness] PASS" in out
    assert (out_dir / "record.csv").exists()
    assert (out_dir / "report.txt").exists()


def test_simulate_failing_check_exits_one(tmp_path, capsys):
    # far from equilibrium at such a short horizon, the distance check fails
    cfg = tmp_path / "run.cfg"
    cfg.write_text(config_text(**{
        "initial.kind": "perturbed_equilibrium", "initial.value": None,
        "checks": "asymptotics",
    }), encoding="utf-8")
    rc = main(["simulate", "--config", str(cfg)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "[asymptotics] FAIL" in out


def test_simulate_missing_config(tmp_path, capsys):
    rc = main(["simulate", "--config", str(tmp_path / "ghost.cfg")])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def parse_kv_lines(text):
    pairs = {}
    for line in text.splitlines():
        if " = " in line:
            key, value = line.split(" = ", 1)
            pairs[key] = value
    return pairs


def test_eigen_output(capsys):
    rc = main(["eigen", "--l", "1", "--n", "128", "--alpha", "0.75"])
    out = capsys.readouterr().out
    assert rc == 0
    pairs = parse_kv_lines(out)
    assert float(pairs["lambda1"]) == pytest.approx(1.6118700424863808, rel=1e-9)
    assert float(pairs["gap"]) > 0.0
    assert "lambda1_drifted" not in pairs


def test_eigen_drifted_output(capsys):
    rc = main([
        "eigen", "--l", "1", "--n", "128", "--alpha", "0.75",
        "--c", "0.2", "--abar", "1.6618700424863808",
    ])
    out = capsys.readouterr().out
    assert rc == 0
    drifted = float(parse_kv_lines(out)["lambda1_drifted"])
    assert drifted < -1e-8


def test_eigen_drift_args_must_pair(capsys):
    rc = main(["eigen", "--l", "1", "--n", "64", "--alpha", "0.75",
               "--c", "0.2"])
    assert rc == 2
    assert "--abar" in capsys.readouterr().err


def test_kernel_tabulate_stdout(capsys):
    rc = main(["kernel", "tabulate", "--alpha", "0.75", "--xmax", "5",
               "--n", "11"])
    out = capsys.readouterr().out.splitlines()
    assert rc == 0
    assert out[0] == "x,K"
    assert len(out) == 12
    xs = [float(line.split(",")[0]) for line in out[1:]]
    vals = [float(line.split(",")[1]) for line in out[1:]]
    assert xs[0] == 0.0 and xs[-1] == 5.0
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_kernel_tabulate_to_file(tmp_path, capsys):
    out_file = tmp_path / "kernel.csv"
    rc = main(["kernel", "tabulate", "--alpha", "0.6", "--xmax", "2",
               "--n", "5", "--out", str(out_file)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    assert out_file.read_text().startswith("x,K\n")


def test_kernel_mass(capsys):
    rc = main(["kernel", "mass", "--alpha", "1.0", "--radius", "30"])
    out = capsys.readouterr().out
    assert rc == 0
    mass = float(parse_kv_lines(out)["mass"])
    assert abs(mass - 1.0) <= 1e-6


def test_kernel_mass_truncation_error(capsys):
    rc = main(["kernel", "mass", "--alpha", "0.75", "--radius", "10"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_sweep_cli(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(config_text(**{"params.chi1": "1", "params.chi2": "0"}),
                   encoding="utf-8")
    out_dir = tmp_path / "sweep"
    rc = main(["sweep", "--config", str(cfg), "--axis", "params.b",
               "--values", "0.5,2", "--out", str(out_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "params.b = 0.5: outcome = ok, no checks" in out
    assert "params.b = 2: outcome = ok, no checks" in out
    assert f"summary written to {out_dir / 'summary.csv'}" in out
    assert (out_dir / "summary.csv").exists()


def test_sweep_bad_values(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(config_text(), encoding="utf-8")
    rc = main(["sweep", "--config", str(cfg), "--axis", "params.b",
               "--values", "0.5,two"])
    assert rc == 2
    assert "comma-separated" in capsys.readouterr().err


SPEED_CFG = "\n".join([
    CONFIG_MAGIC,
    "params.dim = 1",
    "params.alpha = 0.75",
    "params.chi1 = 0",
    "params.chi2 = 0",
    "params.lambda1 = 1",
    "params.lambda2 = 1",
    "params.mu1 = 1",
    "params.mu2 = 1",
    "params.a = 1",
    "params.b = 1",
    "params.gamma = 2",
    "params.k = 1",
    "grid.extent = 200",
    "grid.points = 1024",
    "stepper.dt = 0.02",
    "stepper.t_end = 8",
    "stepper.adaptive = false",
    "initial.kind = bump",
    "initial.radius = 5",
    "initial.height = 1.2",
    "initial.floor = 1e-8",
    "speed.window_start = 3",
    "speed.window_end = 8",
]) + "\n"


def test_speed_run(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(SPEED_CFG, encoding="utf-8")
    out_file = tmp_path / "front.csv"
    rc = main(["speed", "--config", str(cfg), "--out", str(out_file)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "alpha = 0.75: rate =" in out
    lines = out_file.read_text().splitlines()
    assert lines[0] == "t,R,level"
    assert lines[-2] == "rate,r2,lower,upper"
    rate, r2, lower, upper = (float(v) for v in lines[-1].split(","))
    assert lower == pytest.approx(0.4, rel=1e-12)
    assert upper == pytest.approx(0.4, rel=1e-12)
    assert 0.8 * lower <= rate <= 1.2 * upper
    assert r2 >= 0.99


def test_speed_alpha_grid_file_naming(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(SPEED_CFG.replace("stepper.t_end = 8", "stepper.t_end = 4")
                   .replace("speed.window_end = 8", "speed.window_end = 4"),
                   encoding="utf-8")
    out_file = tmp_path / "front.csv"
    rc = main(["speed", "--config", str(cfg), "--alpha-grid", "0.6,0.9",
               "--out", str(out_file)])
    capsys.readouterr()
    assert rc in (0, 1)
    for name in ("front-alpha0p6.csv", "front-alpha0p9.csv"):
        text = (tmp_path / name).read_text().splitlines()
        assert text[0] == "t,R,level"
        assert text[-2] == "rate,r2,lower,upper"


def test_console_script_help():
    proc = subprocess.run(["fracchemo", "--help"], capture_output=True,
                          text=True, timeout=60)
    assert proc.returncode == 0
    for word in ("simulate", "classify", "constants", "speed", "eigen",
                 "kernel", "sweep"):
        assert word in proc.stdout
