"""JSON and CSV output with fixed 17-significant-digit floats.

The standard ``json`` module writes the shortest round-trip repr; fixed-width
``%.17g`` keeps output byte-identical across platforms and Python versions.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence


def format_number(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x + 0.0, ".17g")  # + 0.0 turns -0.0 into 0.0


def dumps(obj: Any) -> str:
    """Serialize dicts, lists, strings, numbers, booleans and None.

    Non-finite floats become ``null``.
    """
    if obj is None:
        return "null"
    if isinstance(obj, (bool, int)):
        return format_number(obj)
    if isinstance(obj, float):
        return format_number(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else format_number(v) for v in row])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))
