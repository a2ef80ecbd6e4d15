"""Output formatting: every float is written with 17 significant digits."""

from __future__ import annotations

import csv
import io
import json

import numpy as np


def fmt(x) -> str:
    x = float(x)
    if np.isnan(x):
        return "nan"
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _swap_floats(obj, table):
    if isinstance(obj, (float, np.floating)):
        key = f"@@float{len(table)}@@"
        table[key] = fmt(obj)
        return key
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_swap_floats(v, table) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _swap_floats(v, table) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_swap_floats(v, table) for v in obj]
    return obj


def dumps(obj) -> str:
    """JSON text with floats as 17-digit literals; non-finite values become strings."""
    table: dict = {}
    text = json.dumps(_swap_floats(obj, table), indent=2)
    for key, literal in table.items():
        if literal in ("nan", "inf", "-inf"):
            literal = f'"{literal}"'
        text = text.replace(f'"{key}"', literal)
    return text + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()
