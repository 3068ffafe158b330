"""Deterministic JSON and CSV writers.

Floats are written with 17 significant digits so values survive a parse and
re-serialize unchanged. Keys are sorted. Non-finite floats become ``null``.
"""

from __future__ import annotations

import enum
import json
import math


def format_float(x: float) -> str:
    return format(x, ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, enum.Enum):
        return _encode(obj.value)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _encode(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    return _encode(obj) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, enum.Enum):
        return str(v.value)
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else ""
    return str(v)


def dumps_csv(header, rows) -> str:
    """Comma-separated, header first, LF line endings; ``rows`` are dicts and
    missing keys become empty cells."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(row.get(col)) for col in header))
    return "\n".join(lines) + "\n"
