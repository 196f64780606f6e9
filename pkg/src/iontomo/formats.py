"""JSON and CSV file formats.

* dataset: JSON list of nine ``{"setting_id", "shots", "counts": {"00", "01", "10", "11"}}``
* matrix:  JSON ``{"re": [[...]], "im": [[...]]}`` or a 16-row CSV ``row,col,re,im``
* pulse sequence: JSON list of ``{"ion", "kind", "theta", "phi"}``

Floats are always written with 17 significant digits so that files round-trip
bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .measure import CountsRecord
from .pulsesim import Pulse


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """``json.dumps`` with 17-significant-digit floats; numpy scalars and arrays allowed."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, np.generic):
        obj = obj.item()
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(d) -> np.ndarray:
    try:
        m = np.array(d["re"], dtype=float) + 1j * np.array(d["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix record: {exc}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix record has shape {m.shape}")
    return m


def matrix_to_csv(m) -> str:
    m = np.asarray(m, dtype=complex)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for (r, c), v in np.ndenumerate(m):
        w.writerow([r, c, _format_float(v.real), _format_float(v.imag)])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = list(csv.DictReader(io.StringIO(text)))
    n = int(round(math.sqrt(len(rows))))
    if n * n != len(rows):
        raise ValueError(f"{len(rows)} rows do not form a square matrix")
    m = np.zeros((n, n), dtype=complex)
    for row in rows:
        m[int(row["row"]), int(row["col"])] = float(row["re"]) + 1j * float(row["im"])
    return m


def dataset_to_json(records) -> list[dict]:
    return [r.to_dict() for r in records]


def dataset_from_json(data) -> list[CountsRecord]:
    if not isinstance(data, list):
        raise ValueError("dataset must be a JSON list of setting records")
    try:
        return [CountsRecord.from_dict(d) for d in data]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed setting record: {exc}") from None


def pulses_to_json(pulses) -> list[dict]:
    return [p.to_dict() for p in pulses]


def pulses_from_json(data) -> list[Pulse]:
    return [Pulse.from_dict(d) for d in data]


def table_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_format_float(float(r[c])) for c in columns])
    return buf.getvalue()
