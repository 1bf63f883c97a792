"""Report envelope and its JSON/CSV serializations.

Reports are deterministic for a fixed request apart from the single
`timing_s` field: keys are sorted, floats are emitted in shortest
round-trip form, exact rationals are strings.  The JSON document
re-parses losslessly into the same model; CSV is a plot-ready projection
of the row section only.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json

from pydantic import BaseModel, ConfigDict


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    input_hash: str
    request: dict
    result: dict
    columns: list[str]
    rows: list[dict]
    timing_s: float


def input_hash(command: str, request_echo: dict) -> str:
    canonical = json.dumps({"command": command, "request": request_echo},
                           sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_report(command: str, request_echo: dict, result: dict,
                 columns: list[str], rows: list[dict],
                 timing_s: float) -> Report:
    return Report(command=command, input_hash=input_hash(command, request_echo),
                  request=request_echo, result=result, columns=columns,
                  rows=rows, timing_s=timing_s)


def to_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json"), sort_keys=True,
                      indent=2) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_cell(row.get(col)) for col in report.columns])
    return buf.getvalue()


def parse_report(text: str) -> Report:
    return Report.model_validate(json.loads(text))
