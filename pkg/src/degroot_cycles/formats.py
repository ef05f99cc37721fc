"""Matrix/vector files, deterministic JSON and DOT rendering.

Matrix files are CSV (one row per line) or JSON ``{"n": n, "rows": [...]}``;
vector files are a single CSV line or a JSON array.  The format is taken
from a ``.json`` suffix, otherwise sniffed from the first character.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .digraph import WeightedDigraph
from .errors import DeGrootError


class InputError(DeGrootError):
    """Unreadable or malformed input file."""


def parse_number(text: str) -> float:
    """Decimal literal, or an exact fraction such as ``10/101``."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}") from None


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _is_json(path, text: str) -> bool:
    return str(path).lower().endswith(".json") or text.lstrip()[:1] in ("{", "[")


def _load_json(path, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def _numbers(items, where: str) -> list[float]:
    out = []
    for x in items:
        if isinstance(x, bool) or not isinstance(x, (int, float, str)):
            raise InputError(f"{where}: non-numeric value {x!r}")
        out.append(parse_number(x) if isinstance(x, str) else float(x))
    return out


def read_matrix(path) -> np.ndarray:
    text = _read_text(path)
    if _is_json(path, text):
        doc = _load_json(path, text)
        if not isinstance(doc, dict) or "rows" not in doc:
            raise InputError(f'{path}: expected an object with "n" and "rows"')
        rows = doc["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError(f'{path}: "rows" must be an array of arrays')
        matrix = [_numbers(r, str(path)) for r in rows]
        if "n" in doc and doc["n"] != len(matrix):
            raise InputError(f'{path}: "n" = {doc["n"]} but {len(matrix)} rows given')
    else:
        matrix = [
            _numbers(row, str(path))
            for row in csv.reader(io.StringIO(text))
            if any(cell.strip() for cell in row)
        ]
    if not matrix or any(len(r) != len(matrix) for r in matrix):
        raise InputError(f"{path}: expected n rows of n numbers")
    return np.array(matrix, dtype=float)


def read_vector(path) -> np.ndarray:
    text = _read_text(path)
    if _is_json(path, text):
        doc = _load_json(path, text)
        if not isinstance(doc, list):
            raise InputError(f"{path}: expected a JSON array")
        values = _numbers(doc, str(path))
    else:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise InputError(f"{path}: expected a single comma-separated line")
        values = _numbers(next(csv.reader([lines[0]])), str(path))
    if not values:
        raise InputError(f"{path}: empty vector")
    return np.array(values, dtype=float)


def write_matrix(path, m: np.ndarray) -> None:
    """Write with shortest round-trip float repr so a re-read is bit-exact."""
    m = np.asarray(m, dtype=float)
    if str(path).lower().endswith(".json"):
        rows = [[float(x) for x in r] for r in m]
        text = json.dumps({"n": len(rows), "rows": rows}) + "\n"
    else:
        text = "".join(",".join(repr(float(x)) for x in r) + "\n" for r in m)
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def fmt_sci(x: float) -> str:
    """12 significant digits, scientific notation."""
    return format(float(x), ".11e")


def dumps(obj) -> str:
    """JSON with every float in fixed 12-digit scientific notation.

    Non-finite floats become strings (``"inf"``) since JSON has no literal
    for them.
    """
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return json.dumps(str(float(obj)))
        return fmt_sci(obj)
    return json.dumps(obj)


def to_dot(G: WeightedDigraph, show_loops: bool = False) -> str:
    """Graphviz text; vertices are labelled ``1..n`` and arcs follow influence."""
    lines = ["digraph G {"]
    for v in range(G.n):
        lines.append(f"  {v + 1};")
    for a in G.arcs:
        if a.tail == a.head and not show_loops:
            continue
        lines.append(f'  {a.tail + 1} -> {a.head + 1} [label="{a.weight:.6g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
