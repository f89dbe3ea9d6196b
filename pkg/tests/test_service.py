"""HTTP service endpoints: happy paths, error mapping, content checks."""

import math

import pytest
from fastapi.testclient import TestClient

from qchaos.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


class TestMeta:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "ok"
        assert body["version"]

    def test_presets(self, client):
        r = client.get("/presets")
        assert r.status_code == 200
        by_name = {p["name"]: p for p in r.json()["presets"]}
        assert set(by_name) == {"uu", "dd", "ss", "cc", "bb"}
        assert by_name["cc"]["quark_mass_mev"] == 300.0
        assert by_name["cc"]["alpha_s"] == 0.112
        assert by_name["cc"]["reduced_mass_gev"] == pytest.approx(0.15)


class TestCriticalField:
    def test_preset_run_with_conversions(self, client):
        r = client.post(
            "/critical-field",
            json={
                "preset": "cc",
                "n": 5.0,
                "omega": 1e9,
                "omega_unit": "hz",
                "modes": ["small_a", "large_a"],
            },
        )
        assert r.status_code == 200
        body = r.json()
        assert len(body["results"]) == 2
        for entry in body["results"]:
            assert entry["epsilon_cr"] > 0.0
            assert entry["epsilon_cr_v_per_fm"] > 0.0
            assert entry["k_pair"] == [1, 2]
        # every omega reading is reported; none silently substituted
        assert set(body["readings_v_per_fm"]) == {"hz", "ev", "natural"}
        assert body["readings_v_per_fm"]["hz"]["small_a"] > 0.0

    def test_explicit_parameters_natural_units(self, client):
        r = client.post(
            "/critical-field",
            json={"Z": 0.15, "lam": 0.4, "n": 5.0, "omega": 1.0, "modes": ["small_a"]},
        )
        assert r.status_code == 200
        entry = r.json()["results"][0]
        assert entry["epsilon_cr_v_per_fm"] is None  # no mass scale given

    def test_config_errors_are_400(self, client):
        # explicit Z/lam cannot take omega in hz (no mass scale)
        r = client.post(
            "/critical-field",
            json={"Z": 0.15, "lam": 0.4, "n": 5.0, "omega": 1e9, "omega_unit": "hz"},
        )
        assert r.status_code == 400
        assert r.json()["error"] == "config"
        # neither preset nor Z/lam
        r = client.post("/critical-field", json={"n": 5.0, "omega": 1.0})
        assert r.status_code == 400
        # unknown mode
        r = client.post(
            "/critical-field",
            json={"Z": 0.15, "lam": 0.4, "n": 5.0, "omega": 1.0, "modes": ["bogus"]},
        )
        assert r.status_code == 400
        # empty modes
        r = client.post(
            "/critical-field",
            json={"Z": 0.15, "lam": 0.4, "n": 5.0, "omega": 1.0, "modes": []},
        )
        assert r.status_code == 400

    def test_numeric_failure_is_409(self, client):
        # hydrogen assembled mode below the fundamental resonance
        r = client.post(
            "/critical-field",
            json={"Z": 0.15, "lam": 0.4, "n": 1.0, "omega": 1e-6, "modes": ["hydrogen"]},
        )
        assert r.status_code == 409
        assert r.json()["error"] == "numeric"

    def test_malformed_body_is_422(self, client):
        r = client.post("/critical-field", json={"n": -1.0, "omega": 1.0})
        assert r.status_code == 422


class TestScan:
    def test_default_omega_and_row_count(self, client):
        r = client.post(
            "/scan",
            json={"n_min": 1.0, "n_max": 3.0, "n_step": 0.5, "modes": ["hydrogen", "small_a"]},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["omega"] == pytest.approx(4.0 * 0.15**2)
        assert len(body["rows"]) == 5 * 2
        modes = {row["mode"] for row in body["rows"]}
        assert modes == {"hydrogen", "small_a"}

    def test_gaps_are_null_rows(self, client):
        r = client.post(
            "/scan",
            json={"n_min": 0.05, "n_max": 0.05, "n_step": 1.0, "omega": 1e-4, "modes": ["hydrogen"]},
        )
        assert r.status_code == 200
        rows = r.json()["rows"]
        assert len(rows) == 1
        assert rows[0]["epsilon_cr"] is None

    def test_bad_range_is_400(self, client):
        r = client.post("/scan", json={"n_min": 5.0, "n_max": 1.0})
        assert r.status_code == 400


class TestPoincare:
    def test_zero_like_drive_smoke(self, client):
        # eps = eps_cr/100: weak drive, everything completes on circles
        r = client.post(
            "/poincare",
            json={
                "system": "small_a",
                "eps_ratio": 100.0,
                "n_periods": 10,
                "per_circle": 4,
            },
        )
        assert r.status_code == 200
        body = r.json()
        rows = body["rows"]
        assert rows
        assert {row["panel"] for row in rows} == {"c"}
        assert all(row["tag"] == "completed" for row in rows)
        meta = body["metadata"]["systems"]["small_a"]
        assert meta["panel"] == "c"
        assert meta["epsilon"] == pytest.approx(meta["epsilon_cr"] / 100.0)

    def test_ratio_convention_flag(self, client):
        r = client.post(
            "/poincare",
            json={
                "system": "small_a",
                "eps_ratio": 0.01,
                "ratio_is_eps_over_ecr": True,
                "n_periods": 5,
                "per_circle": 2,
            },
        )
        assert r.status_code == 200
        meta = r.json()["metadata"]["systems"]["small_a"]
        assert meta["epsilon"] == pytest.approx(meta["epsilon_cr"] * 0.01)

    def test_unknown_system_is_400(self, client):
        r = client.post("/poincare", json={"system": "helium"})
        assert r.status_code == 400


class TestActionTable:
    def test_hydrogen_columns_match_kepler(self, client):
        r = client.post(
            "/action-table",
            json={"Z": 0.15, "lam": 0.0, "n_min": 1.0, "n_max": 10.0, "count": 10},
        )
        assert r.status_code == 200
        for row in r.json()["rows"]:
            n = row["n"]
            assert row["E"] == pytest.approx(-0.15**2 / (2 * n * n), rel=1e-9)
            assert row["omega0"] == pytest.approx(0.15**2 / n**3, rel=1e-9)
            assert row["a"] == pytest.approx(0.15 / -row["E"], rel=1e-9)

    def test_quarkonium_monotone_action_and_flags(self, client):
        r = client.post(
            "/action-table",
            json={"Z": 0.15, "lam": 0.4, "n_min": 0.02, "n_max": 40.0, "count": 30},
        )
        assert r.status_code == 200
        rows = r.json()["rows"]
        es = [row["E"] for row in rows]
        assert all(b > a for a, b in zip(es, es[1:]))
        assert rows[0]["regime_small_ok"] and not rows[0]["regime_large_ok"]
        assert rows[-1]["regime_large_ok"] and not rows[-1]["regime_small_ok"]


class TestValidate:
    def test_fresh_state_passes(self, client):
        r = client.post("/validate", json={})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is True
        assert all(c["passed"] for c in body["checks"])
        assert body["constants"]  # fitted convention constants are reported

    def test_flipped_convention_fails_loudly(self, client):
        r = client.post("/validate", json={"flip_action_convention": True})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is False
        failing = {c["name"] for c in body["checks"] if not c["passed"]}
        assert "hydrogen_action_identity" in failing
