"""JSON and CSV rendering of command results."""

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from lfree.models import CellOutcome, CommandResult, IntegerSet, RateExpr, VerifyReport


def to_jsonable(value: Any) -> Any:
    """Convert results to JSON types; rationals become "num/den" strings."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, RateExpr):
        return str(value)
    if isinstance(value, IntegerSet):
        return value.to_list()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return str(value)


def cell_document(cell: CellOutcome) -> dict[str, Any]:
    doc: dict[str, Any] = {"key": cell.key, "status": cell.status.value}
    if cell.witness is not None:
        doc["witness"] = cell.witness
    if cell.note:
        doc["note"] = cell.note
    return doc


def report_outputs(report: VerifyReport) -> dict[str, Any]:
    """Outputs section for a verification report."""
    return {
        "suite": report.suite,
        "grid": report.grid,
        "passed": report.passed,
        "totals": report.totals,
        "cells": [cell_document(cell) for cell in report.cells],
    }


def result_document(result: CommandResult) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "command": result.command,
        "equation": result.equation,
        "inputs": result.inputs,
        "outputs": result.outputs,
    }
    if result.timing is not None:
        doc["timing"] = f"{result.timing:.6f}"
    return to_jsonable(doc)


def render_json(result: CommandResult, indent: int | None = 2) -> str:
    """One JSON document with sorted keys; equal inputs give identical text."""
    return json.dumps(result_document(result), sort_keys=True, indent=indent)


def _flat(value: Any) -> Any:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if isinstance(value, bool):
        return str(value).lower()
    return "" if value is None else value


def _write_csv(fieldnames: list[str], rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def render_csv(result: CommandResult) -> str:
    """Flat CSV: one row per verification cell, otherwise a single row."""
    doc = result_document(result)
    cells = doc["outputs"].get("cells") if result.command == "verify" else None
    if cells is not None:
        keys = sorted({name for cell in cells for name in cell["key"]})
        fieldnames = keys + ["status", "note", "witness"]
        rows = []
        for cell in cells:
            row = {name: cell["key"].get(name, "") for name in keys}
            row.update(
                status=cell["status"],
                note=cell.get("note", ""),
                witness=_flat(cell.get("witness")),
            )
            rows.append(row)
        return _write_csv(fieldnames, rows)

    row: dict[str, Any] = {"command": doc["command"], "equation": _flat(doc["equation"])}
    for section in ("inputs", "outputs"):
        for name in sorted(doc[section]):
            row[f"{section[:-1]}.{name}"] = _flat(doc[section][name])
    if "timing" in doc:
        row["timing"] = doc["timing"]
    return _write_csv(list(row), [row])


def render(result: CommandResult, fmt: str = "json", indent: int | None = 2) -> str:
    if fmt == "csv":
        return render_csv(result)
    return render_json(result, indent=indent)
