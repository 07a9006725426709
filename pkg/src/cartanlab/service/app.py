"""The verification service: suites in, deterministic reports out."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response

from .. import __version__
from ..reporting import canonical_json
from ..suites import ConfigInvalid, SUITE_NAMES, run_suite
from .models import Report, ScenarioConfig

app = FastAPI(
    title="cartan-lab",
    version=__version__,
    description=(
        "Verification suites for the parabolic model geometries: ballast "
        "identities, isotropy dynamics, shrinking paths, sprawl gluing, and "
        "holonomy closures.  Reports are byte-deterministic per (config, seed)."
    ),
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/suites")
def suites() -> dict:
    return {"suites": SUITE_NAMES + ["all"]}


@app.post("/run", response_model=Report)
def run(config: ScenarioConfig) -> Response:
    try:
        report = run_suite(config.model_dump())
    except ConfigInvalid as exc:
        raise HTTPException(status_code=422, detail={"path": exc.path, "message": str(exc)})
    return Response(content=canonical_json(report), media_type="application/json")


@app.get("/schemas/config")
def config_schema() -> dict:
    return ScenarioConfig.model_json_schema()


@app.get("/schemas/report")
def report_schema() -> dict:
    return Report.model_json_schema()
