"""CSV/JSON serialisation. Rationals always travel as "num/den" strings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence, Union


@dataclass
class Table:
    columns: list[str]
    rows: list[Sequence[Any]] = field(default_factory=list)


def format_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".12g")


def scalar(value: Any) -> Any:
    """JSON-ready form of one value."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isfinite(value):
            return float(format_float(value))
        return format_float(value)
    if hasattr(value, "lower") and hasattr(value, "mid"):  # enclosures
        return {"lower": str(value.lower), "upper": str(value.upper),
                "approx": float(format_float(float(value.mid)))}
    if isinstance(value, Mapping):
        return {str(k): scalar(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [scalar(v) for v in value]
    try:
        return float(format_float(float(value)))
    except (TypeError, ValueError):
        return str(value)


def cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(scalar(value), sort_keys=True, separators=(",", ":"))
    if hasattr(value, "lower") and hasattr(value, "mid"):
        return f"[{value.lower},{value.upper}]"
    return str(value)


def to_table(record: Mapping[str, Any]) -> Table:
    return Table(["key", "value"], [(k, v) for k, v in record.items()])


def emit(data: Union[Table, Mapping[str, Any]], fmt: str = "csv",
         meta: Optional[Mapping[str, Any]] = None) -> bytes:
    """Serialise a table or a record.

    CSV: an optional ``# key=value`` metadata line, a header row, then rows.
    JSON: one object holding the metadata, and either ``columns``/``rows`` or
    the record's own keys.
    """
    if fmt == "csv":
        table = data if isinstance(data, Table) else to_table(data)
        buf = io.StringIO()
        if meta:
            buf.write("# " + " ".join(f"{k}={cell(v)}" for k, v in meta.items()) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([cell(v) for v in row])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        obj: dict[str, Any] = {k: scalar(v) for k, v in (meta or {}).items()}
        if isinstance(data, Table):
            obj["columns"] = list(data.columns)
            obj["rows"] = [[scalar(v) for v in row] for row in data.rows]
        else:
            obj.update({k: scalar(v) for k, v in data.items()})
        return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def write_output(payload: bytes, path: Optional[str]) -> None:
    if not path or path == "-":
        import sys
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
