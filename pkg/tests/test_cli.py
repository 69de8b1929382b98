"""Command-line behavior: exit statuses, overrides, and reproducible outputs."""

import json
import subprocess
import sys

import pytest

from nearfocus.cli import main

BASE = """\
frequency: 6 GHz
num_elements: 40
spacing: 2.27 lambda
focal_distance: 200 lambda
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "experiment.yaml"
    path.write_text(BASE)
    return path


def test_successful_run_writes_table_and_summary(tmp_path, config_path, capsys):
    out = tmp_path / "results"
    code = main(["optimal-spacing", "--config", str(config_path), "--output", str(out)])
    assert code == 0
    assert (out / "optimal-spacing.csv").exists()
    summary = json.loads((out / "optimal-spacing_summary.json").read_text())
    assert summary["optimal_spacing_over_lambda"] == pytest.approx(5.0**0.5, rel=1e-9)
    stdout = capsys.readouterr().out
    assert "optimal_spacing_over_lambda" in stdout


def test_format_flag_overrides_config(tmp_path, config_path):
    out = tmp_path / "results"
    code = main(["optimal-spacing", "--config", str(config_path), "--output", str(out), "--format", "json"])
    assert code == 0
    payload = json.loads((out / "optimal-spacing.json").read_text())
    assert payload["columns"][0] == "null_index"


def test_missing_config_exits_one(tmp_path, capsys):
    code = main(["scan", "--config", str(tmp_path / "nope.yaml")])
    assert code == 1
    record = json.loads(capsys.readouterr().err)
    assert record["exit_status"] == 1


def test_config_error_exits_one_with_record(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text(BASE + "spacing_mm: 4\n")
    code = main(["scan", "--config", str(bad)])
    assert code == 1
    record = json.loads(capsys.readouterr().err)
    assert record["error"] == "ConfigError"
    assert "spacing_mm" in record["message"]
    assert "line 5" in record["message"]


def test_domain_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "axial.yaml"
    bad.write_text(BASE + "axial:\n  z_min: 300 lambda\n  z_max: 400 lambda\n")
    code = main(["axial", "--config", str(bad), "--output", str(tmp_path / "o")])
    assert code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["exit_status"] == 2


def test_experiment_argument_overrides_config_value(tmp_path, capsys):
    path = tmp_path / "cfg.yaml"
    path.write_text(BASE + "experiment: scan\n")
    out = tmp_path / "o"
    code = main(["optimal-spacing", "--config", str(path), "--output", str(out)])
    assert code == 0
    assert (out / "optimal-spacing.csv").exists()


def test_seed_flag_lands_in_metadata(tmp_path, config_path):
    out = tmp_path / "o"
    code = main([
        "optimal-spacing", "--config", str(config_path),
        "--output", str(out), "--format", "json", "--seed", "77",
    ])
    assert code == 0
    payload = json.loads((out / "optimal-spacing.json").read_text())
    assert payload["metadata"]["seed"] == 77


def test_cli_reruns_are_byte_identical(tmp_path, config_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        assert main(["scan", "--config", str(config_path), "--output", str(out)]) == 0
    assert (out1 / "scan.csv").read_bytes() == (out2 / "scan.csv").read_bytes()
    assert (out1 / "scan_summary.json").read_bytes() == (out2 / "scan_summary.json").read_bytes()


def test_console_entry_point_runs(tmp_path, config_path):
    out = tmp_path / "o"
    proc = subprocess.run(
        [
            sys.executable, "-m", "nearfocus.cli",
            "optimal-spacing", "--config", str(config_path), "--output", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (out / "optimal-spacing.csv").exists()


def test_unknown_experiment_rejected_by_parser(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["everything", "--config", "x.yaml"])
    assert exc.value.code == 2
