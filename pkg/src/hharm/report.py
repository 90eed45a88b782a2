"""Check results and their text / JSON / CSV renderings.

A Report is one suite run at one ground-set size: a list of check rows,
each row one verified statement at one parameter tuple.  Renderings are
byte-deterministic: rows keep generation order (the generating loops
are themselves deterministic), JSON uses sorted keys, and wall time is
included only when explicitly requested, since it would break identical
re-runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class CheckResult:
    id: str
    params: dict
    status: str
    lhs: Optional[str] = None
    rhs: Optional[str] = None

    def __post_init__(self):
        assert self.status in ("pass", "fail")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def row(check_id: str, params: dict, ok: bool, lhs=None, rhs=None) -> CheckResult:
    """Build a row; lhs / rhs are stringified only when present."""
    return CheckResult(
        id=check_id,
        params=dict(params),
        status="pass" if ok else "fail",
        lhs=None if lhs is None else str(lhs),
        rhs=None if rhs is None else str(rhs),
    )


@dataclass
class Report:
    suite: str
    n: int
    checks: List[CheckResult] = field(default_factory=list)
    ms: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_obj(self) -> dict:
        obj = {
            "suite": self.suite,
            "n": self.n,
            "checks": [_check_obj(c) for c in self.checks],
        }
        if self.ms is not None:
            obj["ms"] = self.ms
        return obj


def _check_obj(c: CheckResult) -> dict:
    obj = {"id": c.id, "params": dict(c.params), "status": c.status}
    if c.lhs is not None:
        obj["lhs"] = c.lhs
    if c.rhs is not None:
        obj["rhs"] = c.rhs
    return obj


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["suite", "n", "checks"],
        "additionalProperties": False,
        "properties": {
            "suite": {"type": "string"},
            "n": {"type": "integer", "minimum": 0},
            "ms": {"type": "integer", "minimum": 0},
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "params", "status"],
                    "additionalProperties": False,
                    "properties": {
                        "id": {"type": "string"},
                        "params": {
                            "type": "object",
                            "additionalProperties": {"type": ["integer", "string"]},
                        },
                        "status": {"enum": ["pass", "fail"]},
                        "lhs": {"type": "string"},
                        "rhs": {"type": "string"},
                    },
                },
            },
        },
    },
}


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def render_json(reports: List[Report]) -> str:
    return json.dumps([r.to_obj() for r in reports], indent=2, sort_keys=True) + "\n"


def render_csv(reports: List[Report]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "n", "check", "params", "status", "lhs", "rhs"])
    for rep in reports:
        for c in rep.checks:
            writer.writerow(
                [
                    rep.suite,
                    rep.n,
                    c.id,
                    _params_str(c.params),
                    c.status,
                    c.lhs or "",
                    c.rhs or "",
                ]
            )
    return buf.getvalue()


def render_text(reports: List[Report]) -> str:
    lines = []
    total = bad = 0
    for rep in reports:
        fails = rep.failures
        total += len(rep.checks)
        bad += len(fails)
        status = "PASS" if not fails else "FAIL"
        timing = f" ms={rep.ms}" if rep.ms is not None else ""
        lines.append(
            f"suite={rep.suite} n={rep.n} checks={len(rep.checks)}"
            f" failures={len(fails)} status={status}{timing}"
        )
        for c in fails:
            detail = f"  FAIL {c.id} {_params_str(c.params)}"
            if c.lhs is not None or c.rhs is not None:
                detail += f" lhs={c.lhs} rhs={c.rhs}"
            lines.append(detail)
    verdict = "PASS" if bad == 0 else "FAIL"
    lines.append(f"result={verdict} suites={len(reports)} checks={total} failures={bad}")
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}
