"""CLI and HTTP service surfaces."""

import io
import json
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from kmdesign.interface import cli_main
from kmdesign.server import create_app

T2_ROW1 = ["--s0", "0.1", "--s1", "0.2", "--t", "12", "--accrual", "24",
           "--fup", "12", "--alpha", "0.05", "--power", "0.8"]

T2_ROW1_JSON = {"s0": 0.1, "s1": 0.2, "t": 12, "accrual": 24, "followup": 12,
                "alpha": 0.05, "power": 0.8}


def run_cli(argv):
    buf = io.StringIO()
    code = cli_main(argv, stream=buf)
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_cli_n_arcsin():
    code, out = run_cli(["n", *T2_ROW1, "--transform", "arcsin"])
    assert code == 0
    line = [l for l in out.splitlines() if l.startswith("arcsin")][0]
    assert line.split()[1] == "77"


def test_cli_n_all_kinds_json():
    code, out = run_cli(["n", *T2_ROW1, "--out", "json"])
    assert code == 0
    rows = {r["kind"]: r for r in json.loads(out)}
    assert [rows[k]["n"] for k in ("identity", "log", "loglog", "logit", "arcsin")] \
        == [99, 52, 75, 59, 77]
    assert rows["arcsin"]["tau1"] == 0.5


def test_cli_n_existing_method():
    code, out = run_cli(["n", *T2_ROW1, "--transform", "log",
                         "--method", "existing", "--out", "json"])
    assert code == 0
    assert json.loads(out)[0]["n"] == 71


def test_cli_power_value():
    code, out = run_cli(["power", *T2_ROW1, "--transform", "arcsin", "--n", "76",
                         "--out", "json"])
    assert code == 0
    assert json.loads(out)[0]["power"] == pytest.approx(0.7965060914, abs=1e-9)


def test_cli_presets():
    code, out = run_cli(["presets", "--out", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["study"] for r in rows] == ["i", "ii", "iii"]
    assert rows[0] == {"study": "i", "s0": 0.50, "s1": 0.70, "t": 3, "a": 22,
                       "b": 4, "alpha": 0.05, "power": 0.90}


def test_cli_domain_error_exit_code():
    code, _ = run_cli(["n", "--s0", "0.2", "--s1", "0.2", "--t", "12",
                       "--accrual", "24", "--fup", "12"])
    assert code == 1


def test_cli_bad_flags_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli_main(["n", "--s0", "0.1"])  # missing required flags
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli_main(["table", "--id", "T9"])
    assert exc.value.code == 2


def test_cli_table_design_only_fast():
    start = time.perf_counter()
    code, out = run_cli(["table", "--id", "T2", "--cells", "design-only"])
    elapsed = time.perf_counter() - start
    assert code == 0
    assert elapsed < 1.0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 12
    assert "99,52,71,75,59,77" in out


def test_cli_table_reps_zero_rejected():
    code, _ = run_cli(["table", "--id", "T2", "--reps", "0"])
    assert code == 1


def test_cli_simulate_small():
    code, out = run_cli(["simulate", "--s0", "0.5", "--t", "12", "--accrual", "24",
                         "--fup", "12", "--n", "25", "--reps", "2000",
                         "--seed", "11", "--out", "json"])
    assert code == 0
    rows = json.loads(out)
    assert {r["kind"] for r in rows} == {"identity", "log", "loglog", "logit", "arcsin"}
    assert all(0 <= r["phat"] <= 1 for r in rows)


def test_http_health_and_presets(client):
    assert client.get("/api/health").json() == {"status": "ok"}
    presets = client.get("/api/presets").json()
    assert {"study": "i", "s0": 0.50, "s1": 0.70, "t": 3, "a": 22, "b": 4,
            "alpha": 0.05, "power": 0.90} in presets


def test_http_sample_size_matches_library(client):
    resp = client.post("/api/sample-size", json={**T2_ROW1_JSON, "kinds": ["arcsin"]})
    assert resp.status_code == 200
    body = resp.json()
    row = body["results"][0]
    assert row["n"] == 77
    assert row["tau1"] == 0.5
    assert row["achieved_power"] == pytest.approx(0.8010644811, abs=1e-9)
    assert body["inputs"]["s0"] == 0.1


def test_http_cli_identical_numbers(client):
    _, out = run_cli(["n", *T2_ROW1, "--out", "json"])
    cli_rows = json.loads(out)
    http_rows = client.post("/api/sample-size", json=T2_ROW1_JSON).json()["results"]
    assert cli_rows == http_rows


def test_http_power_and_curve(client):
    resp = client.post("/api/power", json={**T2_ROW1_JSON, "n": 76,
                                           "kinds": ["arcsin"]})
    assert resp.json()["results"][0]["power"] == pytest.approx(0.7965060914, abs=1e-9)

    curve = client.post("/api/power-curve",
                        json={**T2_ROW1_JSON, "kinds": ["arcsin", "log"]}).json()
    assert curve["target_power"] == 0.8
    by_kind = {c["kind"]: c for c in curve["curves"]}
    arcsin = by_kind["arcsin"]
    assert arcsin["n_design"] == 77
    marker = [s for s in arcsin["samples"] if s["n"] == 77][0]
    assert marker["power"] == pytest.approx(0.8010644811, abs=1e-9)
    powers = [s["power"] for s in arcsin["samples"]]
    assert powers == sorted(powers)  # non-decreasing in n
    # every kind's own design n appears among its samples
    assert any(s["n"] == by_kind["log"]["n_design"] for s in by_kind["log"]["samples"])


def test_http_domain_violation_is_400(client):
    resp = client.post("/api/power", json={**T2_ROW1_JSON, "s1": 0.1, "n": 50})
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"] == "domain"
    assert "differ" in body["message"]


def test_http_malformed_json_is_400(client):
    resp = client.post("/api/sample-size", content=b"{not json",
                       headers={"content-type": "application/json"})
    assert resp.status_code == 400
    assert resp.json()["error"] in ("bad_json", "validation")


def test_http_validation_error_is_400(client):
    resp = client.post("/api/sample-size", json={"s0": 0.1})
    assert resp.status_code == 400
    assert resp.json()["error"] == "validation"


def test_http_unknown_route_is_404(client):
    resp = client.get("/api/nope")
    assert resp.status_code == 404
    assert resp.json()["error"] == "not_found"


def test_http_simulate_streams_progress(client):
    resp = client.post("/api/simulate", json={
        "s0": 0.5, "t": 12, "accrual": 24, "followup": 12, "n": 10,
        "reps": 6000, "seed": 3, "workers": 1})
    assert resp.status_code == 200
    lines = [json.loads(line) for line in resp.text.strip().splitlines()]
    assert lines[0]["progress"] <= 1.0
    final = lines[-1]["result"]
    assert final["reps"] == 6000
    assert set(final["p_hat"]) == {"identity", "log", "loglog", "logit", "arcsin"}


def test_http_matches_frontend_golden_fixtures(client):
    """The UI contract file, when present, must match live responses."""
    fixture_path = Path(__file__).resolve().parents[1] / "frontend" / "fixtures" / "golden.json"
    if not fixture_path.exists():
        pytest.skip("frontend fixtures not present")
    golden = json.loads(fixture_path.read_text())
    for pair in golden["sample_size"]:
        live = client.post("/api/sample-size", json=pair["request"]).json()
        assert live == pair["response"]
    assert client.get("/api/presets").json() == golden["presets"]
