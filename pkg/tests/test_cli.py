import csv
import json

import numpy as np
import pytest
from typer.testing import CliRunner

from src.main import app, parse_steps

runner = CliRunner()


def _read(path):
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    return rows[0], np.array([[float(cell) for cell in row] for row in rows[1:]])


def test_walk_writes_both_tables(tmp_path):
    result = runner.invoke(app, ["walk", "--out", str(tmp_path), "--points", "5"])
    assert result.exit_code == 0, result.output

    header, classical = _read(tmp_path / "classical.csv")
    assert header == ["t", "P0", "P1", "P2", "P3"]
    assert classical.shape == (5, 5)
    np.testing.assert_allclose(classical[0], [0, 1, 0, 0, 0], atol=1e-9)
    assert classical[-1, 0] == pytest.approx(3.0)

    header, quantum = _read(tmp_path / "quantum.csv")
    assert header == ["t", "P0", "P1", "P2", "P3"]
    # grid gamma*t = 0, pi/4, pi/2, 3pi/4, pi
    np.testing.assert_allclose(quantum[1, 1:], 0.25, atol=1e-9)
    np.testing.assert_allclose(quantum[2, 1:], [0, 0, 1, 0], atol=1e-9)


def test_walk_respects_gamma(tmp_path):
    result = runner.invoke(app, ["walk", "--out", str(tmp_path), "--points", "3", "--gamma", "2"])
    assert result.exit_code == 0, result.output
    _, quantum = _read(tmp_path / "quantum.csv")
    assert quantum[-1, 0] == pytest.approx(np.pi / 2, rel=1e-8)


def test_walk_output_is_deterministic(tmp_path):
    for name in ("a", "b"):
        assert runner.invoke(app, ["walk", "--out", str(tmp_path / name), "--points", "20"]).exit_code == 0
    for table in ("classical.csv", "quantum.csv"):
        first = (tmp_path / "a" / table).read_bytes()
        assert first == (tmp_path / "b" / table).read_bytes()
        assert b"\r" not in first


def test_figures(tmp_path):
    result = runner.invoke(app, ["figures", "--out", str(tmp_path), "--points", "5", "--noise", "off"])
    assert result.exit_code == 0, result.output

    header, fig3 = _read(tmp_path / "fig3.csv")
    assert header == ["t", "tvd_classical", "tvd_quantum", "expt"]
    assert fig3.shape == (5 + 13, 4)
    assert fig3[0, 1] == pytest.approx(0.75) and fig3[0, 2] == pytest.approx(0.75)
    expt = fig3[fig3[:, 3] == 1]
    np.testing.assert_allclose(expt[:, 0], np.arange(13) * np.pi / 12, rtol=1e-8)

    header, fig4 = _read(tmp_path / "fig4.csv")
    assert header == ["S", "tvd_quantum_theory", "expt"]
    assert fig4.shape == (5 + 12, 3)
    theory = fig4[fig4[:, 2] == 0]
    assert theory[-1, 0] == pytest.approx(1.0, abs=1e-8)
    assert theory[-1, 1] == pytest.approx(0.0, abs=1e-8)


def test_nmr_noiseless(tmp_path):
    result = runner.invoke(app, ["nmr", "--n", "3,12", "--noise", "off", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    header, rows = _read(tmp_path / "nmr.csv")
    assert header == ["n", "gamma_t", "P0", "P1", "P2", "P3", "tvd", "tvd_ideal", "S_theory"]
    assert rows.shape == (2, 9)
    np.testing.assert_allclose(rows[0, 2:6], 0.25, atol=1e-8)
    np.testing.assert_allclose(rows[1, 2:6], [1, 0, 0, 0], atol=1e-8)
    assert rows[1, 1] == pytest.approx(np.pi)


def test_nmr_noise_errors_grow(tmp_path):
    result = runner.invoke(app, ["nmr", "--n", "1,12", "--noise", "on", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    _, rows = _read(tmp_path / "nmr.csv")
    gap = np.abs(rows[:, 6] - rows[:, 7])
    assert gap[1] > gap[0]


@pytest.mark.parametrize("steps", ["13", "-1", "abc", "3,,4"])
def test_nmr_rejects_bad_steps(tmp_path, steps):
    result = runner.invoke(app, ["nmr", "--n", steps, "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert not (tmp_path / "nmr.csv").exists()


def test_parse_steps():
    assert parse_steps(" 0, 5 ,12") == [0, 5, 12]
    assert parse_steps(None) is None


def test_invalid_setting_is_usage_error(tmp_path):
    result = runner.invoke(app, ["walk", "--out", str(tmp_path), "--gamma", "-1"])
    assert result.exit_code == 2


def test_missing_config_file_is_usage_error(tmp_path):
    result = runner.invoke(app, ["walk", "--config", str(tmp_path / "missing.cfg")])
    assert result.exit_code == 2


def test_config_file_is_used(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"grid_points=4\noutput_dir={tmp_path / 'from-file'}\n", encoding="utf-8")
    result = runner.invoke(app, ["walk", "--config", str(cfg)])
    assert result.exit_code == 0, result.output
    _, quantum = _read(tmp_path / "from-file" / "quantum.csv")
    assert len(quantum) == 4


def test_unwritable_output_names_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    result = runner.invoke(app, ["walk", "--out", str(blocker), "--points", "3"])
    assert result.exit_code == 1
    assert "file" in result.output


def test_config_show():
    result = runner.invoke(app, ["config", "--show"])
    assert result.exit_code == 0
    assert "j_hz" in result.output


def test_verify_json(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid_points=2\n", encoding="utf-8")
    result = runner.invoke(app, ["verify", "--json", "--config", str(cfg)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert len(report) == 11
    assert all(set(entry) == {"criterion", "passed", "measured", "tolerance"} for entry in report)
    assert all(entry["passed"] for entry in report)


@pytest.mark.parametrize("noise", ["on", "off"])
def test_verify_accepts_noise_and_points(noise):
    result = runner.invoke(app, ["verify", "--json", "--noise", noise, "--points", "2"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert [entry["criterion"] for entry in report][-1] == "noise contraction"
    assert all(entry["passed"] for entry in report)


def test_verify_rejects_bad_points():
    result = runner.invoke(app, ["verify", "--points", "1"])
    assert result.exit_code == 2


def test_config_without_show_prints_hint():
    result = runner.invoke(app, ["config"])
    assert result.exit_code == 0
    assert "--show" in result.output
