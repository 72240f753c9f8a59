"""End-to-end command-line interface checks."""

import json
import subprocess
import sys

import pytest

from risdm.geometry import default_config


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "risdm", *args],
        capture_output=True, text=True, timeout=600,
    )


@pytest.fixture
def config_path(tmp_path):
    cfg = default_config(M=16)
    path = tmp_path / "scenario.json"
    path.write_text(cfg.to_json(indent=2))
    return str(path)


class TestSweepCommand:
    def test_writes_csv(self, config_path, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli(
            "sweep", "--config", config_path, "--axis", "power_dbm",
            "--values", "7,17,27", "--ris", "gpg,none", "--seed", "5",
            "--out", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "axis,method,ris_mode,pa_mode,beta1,beta2,ssr_bits,trial,seed"
        assert len(lines) == 1 + 3 * 2

    def test_bad_values_rejected(self, config_path, tmp_path):
        proc = run_cli(
            "sweep", "--config", config_path, "--axis", "power_dbm",
            "--values", "27,7", "--out", str(tmp_path / "x.csv"),
        )
        assert proc.returncode == 1
        assert "increasing" in proc.stderr

    def test_unknown_config_field_rejected(self, tmp_path):
        doc = json.loads(default_config(M=8).to_json())
        doc["surprise"] = True
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        proc = run_cli(
            "sweep", "--config", str(bad), "--axis", "power_dbm",
            "--values", "27", "--out", str(tmp_path / "x.csv"),
        )
        assert proc.returncode == 1
        assert "surprise" in proc.stderr

    def test_builtin_default_config(self, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli("sweep", "--axis", "elements_m", "--values", "8,16", "--out", str(out))
        assert proc.returncode == 0, proc.stderr


class TestPaSurfaceCommand:
    def test_writes_grid(self, config_path, tmp_path):
        out = tmp_path / "surface.csv"
        proc = run_cli("pa-surface", "--config", config_path, "--step", "0.1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 1 + 11 * 11


class TestScenarioDump:
    def test_resolved_geometry_json(self, config_path):
        proc = run_cli("scenario", "dump", "--config", config_path)
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert len(doc["links"]) == 14
        link = doc["links"]["a->i1"]
        assert set(link) == {"theta_t", "theta_r", "distance", "gain", "class"}
        assert link["distance"] == pytest.approx(30.0)

    def test_missing_file_is_diagnosed(self):
        proc = run_cli("scenario", "dump", "--config", "/nonexistent.json")
        assert proc.returncode == 1
        assert proc.stderr.strip().startswith("error:")
