"""Deterministic JSON and CSV emission.

Floats print with 17 significant digits (enough for bit-exact float64
round trips), dictionaries keep insertion order, and no whitespace
varies with the environment, so identical invocations produce byte
identical output.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import InvalidArgumentError


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise InvalidArgumentError(f"non-finite value {x!r} in output")
    return format(float(x), ".17g")


def dumps(obj: Any, indent: int = 0) -> str:
    """Serialize to JSON with deterministic float formatting."""
    pad = " " * indent

    def emit(o: Any, depth: int) -> str:
        if o is None:
            return "null"
        if o is True:
            return "true"
        if o is False:
            return "false"
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return format_float(o)
        inner_pad = pad * (depth + 1)
        close_pad = pad * depth
        if isinstance(o, dict):
            items = [
                f"{json.dumps(str(k))}: {emit(v, depth + 1)}" for k, v in o.items()
            ]
            if not items:
                return "{}"
            if indent:
                return "{\n" + ",\n".join(inner_pad + s for s in items) + "\n" + close_pad + "}"
            return "{" + ", ".join(items) + "}"
        if isinstance(o, (list, tuple)):
            items = [emit(v, depth + 1) for v in o]
            if not items:
                return "[]"
            if indent:
                return "[\n" + ",\n".join(inner_pad + s for s in items) + "\n" + close_pad + "]"
            return "[" + ", ".join(items) + "]"
        raise InvalidArgumentError(f"cannot serialize {type(o).__name__}")

    return emit(obj, 0)


def csv_lines(rows: list[list]) -> list[str]:
    """CSV rows with the same deterministic float format."""
    out = []
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, float):
                cells.append(format_float(v))
            else:
                cells.append(str(v))
        out.append(",".join(cells))
    return out
