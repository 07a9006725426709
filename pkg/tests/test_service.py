import json

import pytest
from fastapi.testclient import TestClient

from cartanlab import __version__
from cartanlab.service.app import app
from cartanlab.service.models import Report, ScenarioConfig


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    body = client.get("/health").json()
    assert body == {"status": "ok", "version": __version__}


def test_suites_listing(client):
    names = client.get("/suites").json()["suites"]
    assert "verify-ballast" in names and "all" in names


def test_run_holonomy_suite(client):
    resp = client.post("/run", json={"suite": "holonomy", "seed": 1})
    assert resp.status_code == 200
    report = Report.model_validate(resp.json())
    assert report.suite == "holonomy"
    assert report.summary.failed == 0
    assert all(c.anchor for c in report.checks)


def test_run_rejects_unknown_suite(client):
    resp = client.post("/run", json={"suite": "nope"})
    assert resp.status_code == 422


def test_run_rejects_empty_k_list(client):
    resp = client.post("/run", json={"suite": "shrinking", "params": {"k_list": []}})
    assert resp.status_code == 422


def test_schema_endpoints_match_shipped_files(client):
    import cartanlab

    from pathlib import Path

    shipped = Path(cartanlab.__file__).parent / "schemas"
    cfg = client.get("/schemas/config").json()
    rep = client.get("/schemas/report").json()
    assert cfg == json.loads((shipped / "config.schema.json").read_text())
    assert rep == json.loads((shipped / "report.schema.json").read_text())


def test_reports_are_byte_identical(client):
    body = {"suite": "holonomy", "seed": 17}
    r1 = client.post("/run", json=body)
    r2 = client.post("/run", json=body)
    assert r1.content == r2.content


def test_config_model_defaults_round_trip():
    cfg = ScenarioConfig()
    assert cfg.suite == "all"
    dumped = cfg.model_dump()
    assert dumped["params"]["k_list"] == [10, 100, 1000, 10000]
