"""
Verification reports: one row per computed value, rendered as canonical JSON or
as plot-ready CSV.
"""

import io
import json
import math
from typing import Any

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

CSV_COLUMNS = ["label", "re", "im", "oracle_re", "oracle_im", "disc", "tol", "pass"]


class ReportRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    label: str
    re: float
    im: float = 0.0
    oracle_re: float | None = None
    oracle_im: float | None = None
    disc: float | None = Field(None, description="Relative discrepancy against the oracle or identity.")
    tol: float | None = None
    checked: bool = Field(False, description="Whether the row takes part in the pass verdict.")
    passed: bool = Field(True, alias="pass")

    @classmethod
    def value(cls, label: str, value: complex) -> "ReportRow":
        """An informational row, not checked."""
        value = complex(value)
        return cls(label=label, re=value.real, im=value.imag)

    @classmethod
    def check(
        cls,
        label: str,
        value: complex,
        disc: float,
        tol: float,
        oracle: complex | None = None,
    ) -> "ReportRow":
        value = complex(value)
        oracle = None if oracle is None else complex(oracle)
        return cls(
            label=label,
            re=value.real,
            im=value.imag,
            oracle_re=None if oracle is None else oracle.real,
            oracle_im=None if oracle is None else oracle.imag,
            disc=disc,
            tol=tol,
            checked=True,
            passed=bool(disc <= tol),
        )

    @classmethod
    def flag(cls, label: str, ok: bool, value: complex = 0.0) -> "ReportRow":
        """A checked row for an exact predicate: disc 0 when it holds, 1 otherwise."""
        return cls.check(label, value, disc=0.0 if ok else 1.0, tol=0.0)


class Report(BaseModel):
    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    rows: list[ReportRow] = Field(default_factory=list)
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows if row.checked)

    def extend(self, other: "Report") -> None:
        prefix = f"{other.command}/"
        for row in other.rows:
            self.rows.append(row.model_copy(update={"label": prefix + row.label}))


def _canonical(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float("%.15g" % obj)
    if isinstance(obj, complex):
        return {"re": _canonical(obj.real), "im": _canonical(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return str(obj)


def report_payload(report: Report) -> dict:
    payload = report.model_dump(by_alias=True)
    payload["pass"] = report.passed
    return _canonical(payload)


def render_json(report: Report) -> str:
    return json.dumps(report_payload(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(report: Report) -> str:
    records = [row.model_dump(by_alias=True) for row in report.rows]
    frame = pd.DataFrame.from_records(records, columns=CSV_COLUMNS)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.15g")
    return buffer.getvalue()


def render(report: Report, fmt: str = "json") -> str:
    if fmt == "csv":
        return render_csv(report)
    return render_json(report)
