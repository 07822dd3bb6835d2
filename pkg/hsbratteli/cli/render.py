"""
Report rendering: aligned tables, CSV and JSON lines.

Exact fields stay ``p/q`` strings. With ``decimals > 0`` every exact field
gains a ``name@Kdp`` annotation column next to it.
"""

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any

from pydantic import BaseModel

from hsbratteli.schemas.base import is_exact_field
from hsbratteli.schemas.response import Report

FORMATS = ("table", "csv", "jsonl")


def decimal_annotation(value: str | None, decimals: int) -> str | None:
    if value is None:
        return None
    exact_value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = len(str(abs(exact_value.numerator))) + decimals + 8
        quotient = Decimal(exact_value.numerator) / Decimal(exact_value.denominator)
        return str(quotient.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_EVEN))


def _record(row: BaseModel, decimals: int) -> dict[str, Any]:
    record: dict[str, Any] = {}
    for name, value in row.model_dump().items():
        record[name] = value
        if decimals > 0 and is_exact_field(type(row), name):
            record[f"{name}@{decimals}dp"] = decimal_annotation(value, decimals)
    return record


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _table(records: list[dict[str, Any]]) -> str:
    if not records:
        return "(no rows)\n"
    headers = list(records[0])
    cells = [[_cell(r.get(h)) for h in headers] for r in records]
    widths = [max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths, strict=True)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths, strict=True)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _summary_lines(summary: dict[str, Any]) -> str:
    return "".join(f"{key}: {_cell(value)}\n" for key, value in summary.items())


def render(report: Report, fmt: str, decimals: int = 0) -> tuple[str, str]:
    """Return ``(stdout, stderr)`` text for ``report``."""
    records = [_record(row, decimals) for row in report.rows]
    if fmt == "table":
        return f"{report.command}\n" + _table(records) + _summary_lines(report.summary), ""
    if fmt == "csv":
        buffer = io.StringIO()
        if records:
            writer = csv.DictWriter(buffer, fieldnames=list(records[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(records)
        return buffer.getvalue(), _summary_lines(report.summary)
    if fmt == "jsonl":
        lines = [json.dumps({"command": report.command, **r}) for r in records]
        lines.append(json.dumps({"command": report.command, "summary": report.summary}))
        return "\n".join(lines) + "\n", ""
    raise ValueError(f"unknown format {fmt!r}")
