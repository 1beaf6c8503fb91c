"""Deterministic JSON and CSV rendering of nlpw reports.

Floats are written with 17 significant digits so that every value re-parses
to the same double; non-finite floats become ``null`` in JSON and empty cells
in CSV. Key order follows the order of each report's ``as_dict``.
"""

import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .config import OutputFormat
from .errors import ReportFormatError


def format_float(value: float) -> str:
    return format(value, ".17g")


def _normalize(obj: Any) -> Any:
    """Reduce a report to dicts, lists, str, int, float, bool and None."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return [_normalize(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return _normalize(obj.as_dict())
    if hasattr(obj, "as_row"):
        return _normalize(obj.as_row())
    raise ReportFormatError(f"cannot serialize object of type {type(obj).__name__}")


def _encode_json(obj: Any, indent: int, level: int = 0) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        members = [
            f"{pad}{json.dumps(key, ensure_ascii=False)}: {_encode_json(value, indent, level + 1)}"
            for key, value in obj.items()
        ]
        return "{\n" + ",\n".join(members) + f"\n{close}}}"
    if not obj:
        return "[]"
    items = [f"{pad}{_encode_json(value, indent, level + 1)}" for value in obj]
    return "[\n" + ",\n".join(items) + f"\n{close}]"


def _minimizer_rows(report: Any) -> List[Dict[str, Any]]:
    minimizer = report.minimizer
    return [
        {"x": float(x), "u": float(u)}
        for x, u in zip(minimizer.nodes, minimizer.full_values)
    ]


def _rows(report: Any) -> List[Dict[str, Any]]:
    if hasattr(report, "rows"):
        return [_normalize(row) for row in report.rows()]
    if hasattr(report, "minimizer"):
        return _minimizer_rows(report)
    if isinstance(report, dict):
        return [_normalize(report)]
    if isinstance(report, (list, tuple)):
        return [_normalize(row) for row in report]
    raise ReportFormatError(f"no tabular form for {type(report).__name__}")


def _columns(report: Any, rows: Sequence[Dict[str, Any]]) -> List[str]:
    declared = getattr(report, "row_fields", None)
    if declared:
        return list(declared)
    if hasattr(report, "minimizer"):
        return ["x", "u"]
    columns: List[str] = []
    for row in rows:
        if not isinstance(row, dict):
            raise ReportFormatError("CSV rows must be records")
        columns.extend(key for key in row if key not in columns)
    return columns


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value) if math.isfinite(value) else ""
    if isinstance(value, (dict, list)):
        return _encode_json(value, 0).replace("\n", "")
    return str(value)


def _emit_csv(report: Any) -> str:
    rows = _rows(report)
    columns = _columns(report, rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def emit(report: Any, format: Union[OutputFormat, str] = OutputFormat.JSON) -> bytes:
    """Render a report as UTF-8 JSON or CSV bytes; same input, same bytes."""
    try:
        fmt = OutputFormat(format)
    except ValueError:
        raise ReportFormatError(f"unsupported output format: {format!r}") from None

    if fmt is OutputFormat.JSON:
        text = _encode_json(_normalize(report), indent=2) + "\n"
    else:
        text = _emit_csv(report)
    return text.encode("utf-8")


def write_report(
    report: Any,
    format: Union[OutputFormat, str],
    output: Optional[Path] = None,
) -> bytes:
    """Emit a report to ``output`` (created with its parents) or return it for stdout."""
    payload = emit(report, format)
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_bytes(payload)
    return payload
