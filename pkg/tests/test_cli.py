"""Command-line surface: subcommands, exit codes, CSV and report output."""

import json

import pytest

from susy_qubit.cli import main
from susy_qubit.scenarios import CSV_COLUMNS


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in ("decaying", "hyperbolic", "trigonometric"):
        assert name in out
    assert "k=1.566" in out


def test_describe_preset(capsys):
    assert main(["describe", "--scenario", "hyperbolic"]) == 0
    out = capsys.readouterr().out
    assert "k:              -0.49" in out
    assert "regime:         hyperbolic" in out
    assert "initial rule:   explicit" in out


def test_describe_config_echoes_fields(capsys, tmp_path):
    config = {
        "k": 0.5, "theta": 0.1, "phi": 0.2,
        "t_min": 0.0, "t_max": 3.0, "dt": 0.01,
        "frame": "a", "initial_rule": "explicit",
        "initial_1_re": 1.0, "initial_1_im": 0.0,
        "initial_2_re": 0.0, "initial_2_im": 0.5,
    }
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    assert main(["describe", "--config", str(path)]) == 0
    out = capsys.readouterr().out
    for needle in ("k:              0.5", "theta:          0.1", "phi:            0.2",
                   "t_min:          0", "t_max:          3", "dt:             0.01",
                   "frame:          a", "initial rule:   explicit"):
        assert needle in out


def test_simulate_to_file(capsys, tmp_path):
    out_path = tmp_path / "run.csv"
    code = main([
        "simulate", "--scenario", "decaying", "--dt", "0.01", "--output", str(out_path),
    ])
    assert code == 0
    lines = out_path.read_text(encoding="ascii").split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1002 + 1  # header + 1001 rows + trailing newline split
    err = capsys.readouterr().err
    assert "wrote 1001 rows" in err
    assert "W minimum" in err


def test_simulate_to_stdout(capsys):
    code = main(["simulate", "--scenario", "decaying", "--dt", "0.1"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith(",".join(CSV_COLUMNS))
    assert len(out.split("\n")) == 103


def test_simulate_rk4_method(tmp_path):
    out_path = tmp_path / "rk4.csv"
    code = main([
        "simulate", "--scenario", "hyperbolic", "--dt", "0.01", "--t-max", "5",
        "--method", "rk4", "--output", str(out_path),
    ])
    assert code == 0
    assert out_path.exists()


def test_validate_passes(capsys):
    code = main(["validate", "--scenario", "hyperbolic", "--dt", "0.001", "--t-max", "10"])
    assert code == 0
    out = capsys.readouterr().out
    assert "amplitude deviation" in out
    assert "kernel backend" in out


def test_validate_tolerance_failure(capsys):
    code = main([
        "validate", "--scenario", "hyperbolic", "--dt", "0.001", "--t-max", "10",
        "--tol", "1e-30",
    ])
    assert code == 2


def test_convergence_table(capsys):
    code = main([
        "convergence", "--scenario", "hyperbolic", "--base-dt", "0.004",
        "--levels", "2", "--t-max", "10",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "max error" in out
    assert "order" in out


def test_unknown_preset_is_usage_error(capsys):
    assert main(["describe", "--scenario", "wiggly"]) == 1
    assert "unknown preset" in capsys.readouterr().err


def test_bad_config_reports_diagnostics(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"k": "huge"}', encoding="utf-8")
    assert main(["describe", "--config", str(path)]) == 1
    err = capsys.readouterr().err
    assert "invalid configuration" in err


def test_missing_config_file(capsys, tmp_path):
    assert main(["describe", "--config", str(tmp_path / "nope.json")]) == 1


def test_usage_errors_exit_one(capsys):
    assert main([]) == 1
    assert main(["simulate"]) == 1  # scenario/config required
    assert main(["simulate", "--scenario", "decaying", "--method", "magic"]) == 1


def test_runtime_overflow_is_reported(capsys, tmp_path, monkeypatch):
    # growing branch with a tightened cap: the run aborts with a clear error
    config = {
        "k": 1.566, "theta": -0.83, "phi": 3.14,
        "t_min": 0.0, "t_max": 20.0, "dt": 0.001,
        "frame": "a", "initial_rule": "explicit",
        "initial_1_re": 1.0, "initial_1_im": 0.0,
        "initial_2_re": 0.0, "initial_2_im": 0.0,
    }
    path = tmp_path / "grow.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    monkeypatch.setenv("SUSY_QUBIT_MAG_CAP", "1000")
    code = main(["simulate", "--config", str(path), "--method", "rk4",
                 "--output", str(tmp_path / "grow.csv")])
    assert code == 1
    err = capsys.readouterr().err
    assert "amplitude exceeded magnitude cap" in err
