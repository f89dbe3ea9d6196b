"""Command-line client: exit codes, file formats, sidecars."""

import csv
import json
import os

import pytest

import qchaos.config as cfgmod
from qchaos.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


class TestCriticalField:
    def test_json_output_and_sidecar(self, in_tmp):
        rc = main(
            [
                "critical-field",
                "--preset",
                "cc",
                "--n",
                "5",
                "--omega",
                "1e9",
                "--omega-unit",
                "hz",
                "--mode",
                "small_a,large_a",
                "--out",
                "cf.json",
            ]
        )
        assert rc == EXIT_OK
        body = json.loads((in_tmp / "cf.json").read_text())
        assert body["results"][0]["epsilon_cr"] > 0.0
        side = json.loads((in_tmp / "cf.json.meta.json").read_text())
        assert side["config"]["preset"] == "cc"
        assert side["config_sha256"] == cfgmod.config_hash(side["config"])

    def test_missing_omega_is_usage_error(self):
        assert main(["critical-field", "--preset", "cc", "--n", "5"]) == EXIT_USAGE

    def test_unknown_flag_is_usage_error(self):
        assert main(["critical-field", "--frobnicate", "1"]) == EXIT_USAGE

    def test_numeric_failure_exit_code(self):
        rc = main(
            [
                "critical-field",
                "--n",
                "1",
                "--omega",
                "1e-6",
                "--mode",
                "hydrogen",
                "--out",
                "cf.json",
            ]
        )
        assert rc == EXIT_NUMERIC


class TestScan:
    def test_csv_shape_and_sidecar(self, in_tmp):
        rc = main(
            [
                "scan",
                "--mode",
                "hydrogen,small_a",
                "--n-min",
                "1",
                "--n-max",
                "2",
                "--n-step",
                "0.5",
                "--out",
                "scan.csv",
            ]
        )
        assert rc == EXIT_OK
        header, rows = _read_csv(in_tmp / "scan.csv")
        assert header == ["n", "mode", "epsilon_cr", "k", "regime_gate_ok"]
        assert len(rows) == 3 * 2
        assert {r[1] for r in rows} == {"hydrogen", "small_a"}
        side = json.loads((in_tmp / "scan.csv.meta.json").read_text())
        assert side["omega"] == pytest.approx(4.0 * 0.15**2)

    def test_empty_mode_is_usage_error(self):
        assert main(["scan", "--mode", ","]) == EXIT_USAGE


class TestPoincare:
    def test_csv_and_metadata_round_trip(self, in_tmp):
        rc = main(
            [
                "poincare",
                "--mode",
                "small_a",
                "--eps-ratio",
                "100",
                "--n-periods",
                "5",
                "--per-circle",
                "2",
                "--out",
                "poi.csv",
            ]
        )
        assert rc == EXIT_OK
        header, rows = _read_csv(in_tmp / "poi.csv")
        assert header == [
            "trajectory_id",
            "m",
            "t",
            "x",
            "p",
            "n",
            "theta",
            "tag",
            "panel",
        ]
        assert rows
        assert {r[8] for r in rows} == {"c"}
        # the sidecar's embedded INI parses back to the recorded config
        side = json.loads((in_tmp / "poi.csv.meta.json").read_text())
        assert cfgmod.parse_config_text(side["config_ini"]) == side["config"]
        assert side["run"]["systems"]["small_a"]["panel"] == "c"

    def test_multiple_systems_rejected(self):
        assert main(["poincare", "--mode", "small_a,large_a"]) == EXIT_USAGE


class TestActionTable:
    def test_hydrogen_table(self, in_tmp):
        rc = main(
            [
                "action-table",
                "--config",
                "none.ini",
            ]
        )
        assert rc == EXIT_USAGE  # missing config file is a usage error

        (in_tmp / "run.ini").write_text(
            "[system]\nZ = 0.15\nlam = 0.0\n\n[run]\nn_min = 1.0\nn_max = 5.0\ncount = 5\n"
        )
        rc = main(["action-table", "--config", "run.ini", "--out", "tab.csv"])
        assert rc == EXIT_OK
        header, rows = _read_csv(in_tmp / "tab.csv")
        assert header[:4] == ["E", "n", "omega0", "a"]
        ns = [float(r[1]) for r in rows]
        assert ns == sorted(ns)
        for r in rows:
            n = float(r[1])
            assert float(r[0]) == pytest.approx(-0.15**2 / (2 * n * n), rel=1e-9)


class TestValidate:
    def test_validate_passes_and_flip_fails(self, in_tmp):
        assert main(["validate", "--out", "report.json"]) == EXIT_OK
        report = json.loads((in_tmp / "report.json").read_text())
        assert report["passed"] is True
        assert (
            main(["validate", "--flip-action-convention", "--out", "r2.json"])
            == EXIT_VALIDATION
        )
        bad = json.loads((in_tmp / "r2.json").read_text())
        assert bad["passed"] is False
