"""Verification reports: named identity, per-index two-sided values, residuals."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1


def _jsonable(v: Any):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or isinstance(v, int) or isinstance(v, str):
        return v
    return str(v)


@dataclass(frozen=True)
class Row:
    """One compared index of an identity. Non-asserted rows are informational."""

    index: str
    lhs: Any
    rhs: Any
    asserted: bool = True
    note: str = ""

    @property
    def residual(self):
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return (not self.asserted) or self.residual == 0


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    parameters: dict = field(default_factory=dict)
    rows: tuple[Row, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.ok]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "identity": self.identity,
            "parameters": {k: _jsonable(v) for k, v in self.parameters.items()},
            "rows": [
                {
                    "index": r.index,
                    "lhs": _jsonable(r.lhs),
                    "rhs": _jsonable(r.rhs),
                    "residual": _jsonable(r.residual),
                    "asserted": r.asserted,
                    **({"note": r.note} if r.note else {}),
                }
                for r in self.rows
            ],
            "pass": self.passed,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def format_table(self) -> str:
        """Plain UTF-8 aligned columns, pipe-friendly (no color codes)."""
        head = ["index", "lhs", "rhs", "residual", ""]
        body = []
        for r in self.rows:
            mark = "ok" if r.residual == 0 else ("FAIL" if r.asserted else "info")
            note = f"  {r.note}" if r.note else ""
            body.append([r.index, str(_jsonable(r.lhs)), str(_jsonable(r.rhs)),
                        str(_jsonable(r.residual)), mark + note])
        widths = [max(len(row[i]) for row in [head] + body) for i in range(5)]
        lines = [f"identity: {self.identity}"]
        if self.parameters:
            params = "  ".join(f"{k}={_jsonable(v)}" for k, v in self.parameters.items())
            lines.append(params)
        lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip())
        for row in body:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def report_from_dict(data: dict) -> VerificationReport:
    def _value(v):
        if isinstance(v, str) and "/" in v:
            num, den = v.split("/", 1)
            return Fraction(int(num), int(den))
        return v

    rows = tuple(
        Row(index=r["index"], lhs=_value(r["lhs"]), rhs=_value(r["rhs"]),
            asserted=r.get("asserted", True), note=r.get("note", ""))
        for r in data.get("rows", [])
    )
    return VerificationReport(identity=data["identity"],
                              parameters=data.get("parameters", {}), rows=rows)
