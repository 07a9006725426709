"""Thin command-line client for the verification service.

``cartan-lab run`` executes a suite and writes the deterministic JSON report;
by default it calls the service layer in process, and with ``--server`` it
POSTs the same payload to a running instance.  ``cartan-lab serve`` starts
the FastAPI app, ``cartan-lab schema`` writes the JSON schemas, and
``cartan-lab suites`` lists what can run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .reporting import canonical_json, flatten_csv
from .suites import ConfigInvalid, SUITE_NAMES, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartan-lab",
        description="Verification lab for the parabolic model geometries.",
    )
    parser.add_argument("--version", action="version", version=f"cartan-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a verification suite and write its report")
    run_p.add_argument("--config", help="path to a ScenarioConfig JSON file")
    run_p.add_argument("--suite", default=None,
                       help=f"suite name: {', '.join(SUITE_NAMES + ['all'])} (default: all)")
    run_p.add_argument("--out", help="report output path (default: stdout)")
    run_p.add_argument("--seed", type=int, default=None, help="sampling seed (default: 0)")
    run_p.add_argument("--exact", action="store_true",
                       help="force exact rational arithmetic wherever available")
    run_p.add_argument("--mesh", type=int, default=None, help="override mesh resolution")
    run_p.add_argument("--csv", help="also write the numeric series flattened to CSV")
    run_p.add_argument("--server", help="POST to a running service instead of in-process")

    serve_p = sub.add_parser("serve", help="start the verification service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)

    schema_p = sub.add_parser("schema", help="write the config/report JSON schemas")
    schema_p.add_argument("--out", default=".", help="output directory")

    sub.add_parser("suites", help="list the available suites")
    return parser


def _load_config(args) -> dict:
    cfg: dict = {}
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
    if args.suite is not None:
        cfg["suite"] = args.suite
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.exact:
        cfg["exact"] = True
    if args.mesh is not None:
        cfg["mesh"] = args.mesh
    cfg.setdefault("suite", "all")
    return cfg


def _run_remote(server: str, cfg: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + "/run", json=cfg, timeout=600.0)
    if resp.status_code != 200:
        raise SystemExit(f"server error {resp.status_code}: {resp.text}")
    return resp.json()


def cmd_run(args) -> int:
    cfg = _load_config(args)
    try:
        if args.server:
            report = _run_remote(args.server, cfg)
        else:
            from .service.models import ScenarioConfig

            validated = ScenarioConfig.model_validate(cfg)
            report = run_suite(validated.model_dump())
    except ConfigInvalid as exc:
        print(f"invalid config at {exc.path}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pydantic validation errors land here
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    payload = canonical_json(report)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    if args.csv:
        Path(args.csv).write_text(flatten_csv(report))
    summary = report["summary"]
    print(f"suite={report['suite']} passed={summary['passed']}/{summary['total']}",
          file=sys.stderr)
    return 0 if summary["failed"] == 0 else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_schema(args) -> int:
    from .service.models import Report, ScenarioConfig

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.schema.json").write_text(
        json.dumps(ScenarioConfig.model_json_schema(), indent=2, sort_keys=True) + "\n")
    (out / "report.schema.json").write_text(
        json.dumps(Report.model_json_schema(), indent=2, sort_keys=True) + "\n")
    print(f"schemas written to {out}", file=sys.stderr)
    return 0


def cmd_suites(_args) -> int:
    for name in SUITE_NAMES + ["all"]:
        print(name)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": cmd_run, "serve": cmd_serve, "schema": cmd_schema, "suites": cmd_suites}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
