"""Check records and their text/JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from . import __version__

SCHEMA = 1


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"


@dataclass
class CheckRecord:
    name: str
    status: Status
    expected: Any = None
    actual: Any = None
    anchor: str = ""
    detail: str = ""

    @classmethod
    def compare(cls, name, expected, actual, anchor="", detail="") -> "CheckRecord":
        status = Status.PASS if expected == actual else Status.FAIL
        return cls(name, status, expected, actual, anchor, detail)

    @classmethod
    def holds(cls, name, ok: bool, actual=None, anchor="", detail="") -> "CheckRecord":
        return cls(name, Status.PASS if ok else Status.FAIL, True, actual if actual is not None else ok, anchor, detail)

    @classmethod
    def info(cls, name, actual, anchor="", detail="") -> "CheckRecord":
        return cls(name, Status.INFO, None, actual, anchor, detail)


def _plain(x):
    """Turn tuples, fractions and enums into JSON-friendly values."""
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


@dataclass
class Report:
    command: str
    spec: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    repair_notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, rec: CheckRecord) -> CheckRecord:
        self.records.append(rec)
        return rec

    def extend(self, other: "Report", prefix: Optional[str] = None):
        for r in other.records:
            if prefix:
                r = CheckRecord(f"{prefix}: {r.name}", r.status, r.expected, r.actual, r.anchor, r.detail)
            self.records.append(r)
        for note in other.repair_notes:
            self.repair_notes.append(f"{prefix}: {note}" if prefix else note)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status is Status.FAIL]

    @property
    def status(self) -> Status:
        return Status.FAIL if self.failures else Status.PASS

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": self.command,
            "spec": _plain(self.spec),
            "status": self.status.value,
            "records": [
                {
                    "name": r.name,
                    "status": r.status.value,
                    "expected": _plain(r.expected),
                    "actual": _plain(r.actual),
                    "anchor": r.anchor,
                    "detail": r.detail,
                }
                for r in self.records
            ],
            "repair_notes": list(self.repair_notes),
            "data": _plain(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} ({', '.join(f'{k}={v}' for k, v in self.spec.items())})" if self.spec else self.command]
        for key, val in self.data.items():
            lines.append(f"{key}: {_render(val)}")
        for r in self.records:
            tag = r.status.value.upper()
            if r.status is Status.INFO:
                body = f"{_render(r.actual)}"
            else:
                body = f"expected {_render(r.expected)}, got {_render(r.actual)}"
            line = f"  [{tag:4}] {r.name}: {body}"
            if r.anchor:
                line += f"  ({r.anchor})"
            lines.append(line)
            if r.detail:
                lines.append(f"         {r.detail}")
        if self.repair_notes:
            lines.append("repair notes:")
            lines.extend(f"  - {n}" for n in self.repair_notes)
        if self.records:
            npass = sum(r.status is Status.PASS for r in self.records)
            nfail = len(self.failures)
            lines.append(f"overall: {self.status.value.upper()} ({npass} pass, {nfail} fail)")
        return "\n".join(lines) + "\n"


def _render(x) -> str:
    x = _plain(x)
    if isinstance(x, list):
        return "[" + ", ".join(_render(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_render(v)}" for k, v in sorted(x.items())) + "}"
    return str(x)
