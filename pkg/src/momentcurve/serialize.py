"""Deterministic JSON/CSV emission for CLI results.

Exact values (ints, rationals) serialize as decimal strings, never as
floats: solution counts overflow 2^53 early.  Output documents carry a
header (run configuration, timings, timestamp) and a payload; repeated
runs with identical arguments produce byte-identical payloads, with all
nondeterminism (wall clock) confined to the header.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import sys
from fractions import Fraction

from .weights import Weights, format_weights


def exact_str(value) -> str:
    """Decimal-string form of an exact number (int or rational)."""
    if isinstance(value, bool):
        raise TypeError("bool is not an exact numeric value")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    raise TypeError(f"not an exact value: {type(value).__name__}")


def to_jsonable(obj):
    """Recursively convert results to JSON-safe structures.

    ints and Fractions become decimal strings; floats pass through;
    complex becomes {"re": ..., "im": ...}; dataclasses become dicts;
    Weights become their canonical file text plus metadata.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return exact_str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, Weights):
        return {
            "radius": obj.n_max,
            "mode": obj.mode,
            "text": format_weights(obj),
        }
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for field in dataclasses.fields(obj):
            out[field.name] = to_jsonable(getattr(obj, field.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return to_jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if value is None:
        return ""
    return str(value)


def render_document(header: dict, payload, fmt: str) -> str:
    """One output document; payload bytes depend only on the payload."""
    header = to_jsonable(header)
    payload = to_jsonable(payload)
    if fmt == "json":
        doc = {"header": header, "payload": payload}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    buf.write("# header: ")
    buf.write(json.dumps(header, sort_keys=True, separators=(",", ":")))
    buf.write("\n")
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, dict) and "columns" in payload and "rows" in payload:
        writer.writerow(payload["columns"])
        for row in payload["rows"]:
            writer.writerow([_csv_cell(v) for v in row])
        for key in sorted(k for k in payload if k not in ("columns", "rows")):
            writer.writerow([key, _csv_cell(payload[key])])
    elif isinstance(payload, dict):
        writer.writerow(["key", "value"])
        for key in sorted(payload):
            writer.writerow([key, _csv_cell(payload[key])])
    else:
        writer.writerow(["value"])
        writer.writerow([_csv_cell(payload)])
    return buf.getvalue()


def write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
