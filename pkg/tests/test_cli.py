import json
import math
import subprocess
import sys

import numpy as np
import pytest

from pulsedistill.cli import main, parse_config
from pulsedistill.errors import ConfigError

PI = math.pi


def run_main(capsys, argv):
    rc = main(argv)
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


# ---------------------------------------------------------------- parse_config


def test_parse_defaults():
    cfg = parse_config(["evolve"])
    assert cfg.command == "evolve"
    assert cfg.params.omega == 3.0  # tuned to resonance
    assert cfg.params.g == 0.05
    assert cfg.n_points == 201
    assert cfg.seed == 42
    assert cfg.engine == "rwa"
    assert cfg.format == "csv"
    assert cfg.output_path is None
    assert cfg.t_max is None and cfg.dt is None


def test_parse_flags_override():
    cfg = parse_config(
        ["evolve", "--g", "0.1", "--seed", "7", "--engine", "exact", "--omega", "2.9"]
    )
    assert cfg.params.g == 0.1
    assert cfg.params.omega == 2.9
    assert cfg.seed == 7
    assert cfg.engine == "exact"


def test_parse_dashed_aliases():
    cfg = parse_config(["evolve", "--omega-s", "1.5", "--n-points", "11"])
    assert cfg.params.omega_s == 1.5
    assert cfg.n_points == 11


def test_parse_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# pulse setup\n"
        "g = 0.1\n"
        "seed = 9   # inline comment\n"
        "engine = exact\n"
        "\n"
        "theta_grid = 0.1, 0.2, 0.3\n"
    )
    cfg = parse_config(["sweep"], config_file=str(path))
    assert cfg.params.g == 0.1
    assert cfg.seed == 9
    assert cfg.engine == "exact"
    assert cfg.theta_grid == (0.1, 0.2, 0.3)


def test_parse_precedence_env_file_flag(tmp_path, monkeypatch):
    monkeypatch.setenv("PULSEDISTILL_SEED", "11")
    assert parse_config(["distill"]).seed == 11
    path = tmp_path / "run.cfg"
    path.write_text("seed = 22\n")
    assert parse_config(["distill"], config_file=str(path)).seed == 22
    assert (
        parse_config(["distill", "--seed", "33"], config_file=str(path)).seed == 33
    )


def test_parse_config_flag_beats_parameter(tmp_path):
    a = tmp_path / "a.cfg"
    b = tmp_path / "b.cfg"
    a.write_text("g = 0.2\n")
    b.write_text("g = 0.3\n")
    cfg = parse_config(["evolve", "--config", str(b)], config_file=str(a))
    assert cfg.params.g == 0.3


def test_parse_config_file_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("g = 0.1\nwhatever = 3\n")
    with pytest.raises(ConfigError, match=r"bad\.cfg:2.*unknown key"):
        parse_config(["evolve"], config_file=str(path))
    path.write_text("just some words\n")
    with pytest.raises(ConfigError, match=r"bad\.cfg:1"):
        parse_config(["evolve"], config_file=str(path))
    path.write_text("g = fast\n")
    with pytest.raises(ConfigError, match="invalid value"):
        parse_config(["evolve"], config_file=str(path))
    with pytest.raises(ConfigError, match="cannot read"):
        parse_config(["evolve"], config_file=str(tmp_path / "missing.cfg"))


def test_parse_validation_errors():
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--format", "json"])  # evolve emits csv
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--n_points", "1"])
    with pytest.raises(ConfigError):
        parse_config(["distill", "--n_pairs", "0"])
    with pytest.raises(ConfigError):
        parse_config(["distill", "--seed", "-1"])
    with pytest.raises(ConfigError):
        parse_config(["distill", "--seed", str(2**64)])
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--t_max", "-1.0"])
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--dt", "0.0"])
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--theta", "2.0"])  # outside [0, pi/2]
    with pytest.raises(ConfigError):
        parse_config(["evolve", "--no-such-flag", "1"])
    with pytest.raises(ConfigError):
        parse_config(["frobnicate"])
    with pytest.raises(ConfigError):
        parse_config([])


def test_parse_canonical_format_accepted():
    assert parse_config(["spectrum", "--format", "json"]).format == "json"
    assert parse_config(["sweep", "--format", "csv"]).format == "csv"


# ---------------------------------------------------------------- spectrum


def test_spectrum_report(capsys):
    rc, out, _ = run_main(capsys, ["spectrum"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["local_spectrum"] == [-2.5, 0.5, -1.5, 3.5]
    assert doc["resonance_frequency"] == 3.0
    assert doc["eta34"] == pytest.approx(-20.0)
    assert doc["eta12"] == pytest.approx(0.0, abs=1e-14)
    assert doc["rwa_valid"] is True
    assert doc["params"]["omega"] == 3.0
    np.testing.assert_allclose(
        doc["dressed_energies"],
        [-0.95, -1.05, 2.0012492197250396, -0.00124921972503933],
        atol=1e-12,
    )


def test_spectrum_strong_drive_flagged(capsys):
    rc, out, _ = run_main(capsys, ["spectrum", "--g", "0.5"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["eta34"] == pytest.approx(-2.0)
    assert doc["rwa_valid"] is False


def test_spectrum_g0_is_a_regime_error(capsys):
    rc, _, err = run_main(capsys, ["spectrum", "--g", "0"])
    assert rc == 4
    assert "error" in err


def test_spectrum_to_file(tmp_path, capsys):
    path = tmp_path / "spec.json"
    rc, out, _ = run_main(capsys, ["spectrum", "--output", str(path)])
    assert rc == 0 and out == ""
    assert json.loads(path.read_text())["rwa_valid"] is True


# ---------------------------------------------------------------- evolve


EVOLVE_ROW0 = "0.000000000,0.250000000,0.750000000,0.000000000,0.866025404,0.866025404"


def test_evolve_csv_shape_and_rows(capsys):
    rc, out, _ = run_main(capsys, ["evolve"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == (
        "t_in_1_over_g,p_00dd,p_00uu,p_01uu,concurrence,conditional_concurrence"
    )
    assert len(lines) == 202  # header + default 201 points
    assert lines[1] == EVOLVE_ROW0
    # quarter of the default 2*pi span: full transfer, zero concurrence
    assert lines[51] == (
        "1.570796327,0.250000000,0.000000000,0.750000000,0.000000000,0.000000000"
    )
    # half span: population returns (sign of the amplitude flips)
    assert lines[101] == EVOLVE_ROW0.replace("0.000000000,", "3.141592654,", 1)


def test_evolve_deterministic(capsys):
    _, first, _ = run_main(capsys, ["evolve", "--n_points", "31"])
    _, second, _ = run_main(capsys, ["evolve", "--n_points", "31"])
    assert first == second


def test_evolve_exact_engine_t0(capsys):
    rc, out, _ = run_main(
        capsys, ["evolve", "--engine", "exact", "--n_points", "2", "--t_max", "1.0"]
    )
    assert rc == 0
    assert out.splitlines()[1] == EVOLVE_ROW0


def test_evolve_g0_needs_t_max(capsys):
    rc, _, err = run_main(capsys, ["evolve", "--g", "0"])
    assert rc == 2
    assert "t_max" in err
    rc, out, _ = run_main(
        capsys, ["evolve", "--g", "0", "--t_max", "2.0", "--n_points", "3"]
    )
    assert rc == 0
    # nothing drives the system: every row carries the t = 0 values
    for line in out.splitlines()[1:]:
        assert line.split(",", 1)[1] == EVOLVE_ROW0.split(",", 1)[1]


# ---------------------------------------------------------------- compare-rwa


def test_compare_rwa_columns_and_summary(tmp_path, capsys):
    path = tmp_path / "cmp.csv"
    rc, out, err = run_main(
        capsys, ["compare-rwa", "--n_points", "9", "--output", str(path)]
    )
    assert rc == 0
    assert "max population discrepancy" in out  # summary on stdout
    assert err == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "t,pop_error_max,leakage,eta34"
    assert len(lines) == 10
    first = lines[1].split(",")
    assert first[0] == "0.000000000"
    assert first[1] == "0.000000000"
    assert first[3] == "-20.000000000"
    for line in lines[1:]:
        _, pop_err, leakage, _ = line.split(",")
        assert abs(float(pop_err)) < 5e-3
        assert abs(float(leakage)) < 5e-3


def test_compare_rwa_summary_moves_to_stderr(capsys):
    rc, out, err = run_main(capsys, ["compare-rwa", "--n_points", "5"])
    assert rc == 0
    assert out.startswith("t,pop_error_max")
    assert "max population discrepancy" in err


# ---------------------------------------------------------------- distill


def test_distill_report(capsys):
    rc, out, _ = run_main(capsys, ["distill", "--n_pairs", "1000"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["t_star"] == pytest.approx(19.106332362490186, abs=1e-12)
    assert doc["success_probability"] == pytest.approx(0.5, abs=1e-12)
    assert doc["expected_c_bar"] == doc["success_probability"]
    assert doc["efficiency"] == pytest.approx(math.tan(PI / 6), abs=1e-12)
    assert doc["c_initial"] == pytest.approx(math.sin(PI / 3), abs=1e-12)
    assert doc["n_pairs"] == 1000
    assert doc["seed"] == 42
    assert doc["c_bar"] == doc["n_success"] / 1000
    assert doc["mean_conditional_concurrence"] == pytest.approx(1.0, abs=1e-9)
    assert abs(doc["c_bar"] - 0.5) < 4 * doc["std_error"]


def test_distill_rejects_angles_with_no_optimum(capsys):
    rc, _, err = run_main(capsys, ["distill", "--theta", "0.8"])
    assert rc == 4
    assert "pi/4" in err


# ---------------------------------------------------------------- sweep


def test_sweep_rows(capsys):
    grid = f"{PI / 12},{PI / 8},{PI / 6}"
    rc, out, _ = run_main(
        capsys, ["sweep", "--theta_grid", grid, "--n_pairs", "2000"]
    )
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == (
        "theta_over_pi,C_initial,c_bar_analytic,c_bar_mc,std_error,efficiency"
    )
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "0.083333333"
    assert first[1] == "0.500000000"
    assert first[2] == "0.133974596"
    assert lines[3].split(",")[0] == "0.166666667"


def test_sweep_default_grid_size(capsys):
    rc, out, _ = run_main(capsys, ["sweep", "--n_pairs", "1"])
    assert rc == 0
    assert len(out.splitlines()) == 101


def test_sweep_deterministic(capsys):
    args = ["sweep", "--theta_grid", "0.3,0.5", "--n_pairs", "5000"]
    _, first, _ = run_main(capsys, args)
    _, second, _ = run_main(capsys, args)
    assert first == second


def test_sweep_mirror_flag(capsys):
    theta = PI / 2 - 0.3
    rc, _, err = run_main(
        capsys, ["sweep", "--theta_grid", str(theta), "--n_pairs", "100"]
    )
    assert rc == 4
    assert "mirror" in err
    rc, out, _ = run_main(
        capsys,
        ["sweep", "--theta_grid", str(theta), "--n_pairs", "100", "--mirror"],
    )
    assert rc == 0
    assert len(out.splitlines()) == 2


# ---------------------------------------------------------------- exit codes


def test_exit_code_io_error(tmp_path, capsys):
    rc, _, err = run_main(
        capsys, ["evolve", "--output", str(tmp_path / "no" / "dir" / "x.csv")]
    )
    assert rc == 3
    assert "error" in err


def test_exit_code_config_error(capsys):
    rc, _, err = run_main(capsys, ["evolve", "--engine", "warp"])
    assert rc == 2
    assert "error" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pulsedistill", "spectrum"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rwa_valid"] is True
