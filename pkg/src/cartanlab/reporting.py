"""Deterministic report assembly and serialization.

Reports are plain dicts rendered to canonical JSON (sorted keys, fixed
separators, trailing newline) so equal (config, seed) pairs produce
byte-identical output.  Every check record carries a stable anchor id naming
what the check verifies, plus inputs, outputs, and a verdict.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, List, Optional


def jsonable(value):
    """Recursively coerce values to JSON-stable types (Fractions to strings)."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, float):
        return value
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return repr(value)


def check_record(check_id: str, anchor: str, passed: bool, inputs=None, outputs=None,
                 residual=None) -> dict:
    rec = {
        "id": check_id,
        "anchor": anchor,
        "verdict": "pass" if passed else "fail",
        "inputs": jsonable(inputs or {}),
        "outputs": jsonable(outputs or {}),
    }
    if residual is not None:
        rec["residual"] = jsonable(residual)
    return rec


def assemble_report(suite: str, version: str, config_echo: dict, checks: List[dict]) -> dict:
    passed = sum(1 for c in checks if c["verdict"] == "pass")
    return {
        "suite": suite,
        "tool_version": version,
        "config": jsonable(config_echo),
        "checks": checks,
        "summary": {
            "total": len(checks),
            "passed": passed,
            "failed": len(checks) - passed,
        },
    }


def canonical_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def flatten_csv(report: dict) -> str:
    """Flatten numeric series in check outputs to CSV rows.

    Emits one row per (check, series, index): lists of numbers and lists of
    [k, value] pairs both flatten; everything else is skipped.
    """
    lines = ["check_id,series,index,value"]
    for check in report.get("checks", []):
        cid = check.get("id", "")
        for key, value in sorted((check.get("outputs") or {}).items()):
            if not isinstance(value, list):
                continue
            for idx, item in enumerate(value):
                if isinstance(item, (int, float)) and not isinstance(item, bool):
                    lines.append(f"{cid},{key},{idx},{item!r}")
                elif (
                    isinstance(item, list) and len(item) == 2
                    and isinstance(item[1], (int, float))
                ):
                    lines.append(f"{cid},{key},{item[0]},{item[1]!r}")
    return "\n".join(lines) + "\n"
