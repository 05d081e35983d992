"""Dataset container, CSV ingestion and 17-significant-digit serialization.

The input format is UTF-8 comma-separated pairs, one observation per
line, with an optional ``x,y`` header that is auto-detected.  Rows with
missing, malformed, non-finite or non-positive values are rejected and
reported by line number; a file that yields no valid row is an error.
All numeric output (CSV and JSON) is written with 17 significant digits
so every double round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Dataset",
    "IngestionError",
    "load_dataset",
    "save_dataset",
    "fmt",
    "dumps_json",
]


class IngestionError(ValueError):
    """Raised when a data file cannot be turned into a valid Dataset."""


@dataclass
class Dataset:
    """Ordered sample of strictly positive lifetime pairs."""

    x: np.ndarray
    y: np.ndarray
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
            raise ValueError("x and y must be 1-d arrays of equal length")
        if x.size == 0:
            raise ValueError("dataset must be nonempty")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("observations must be finite")
        if np.any(x <= 0.0) or np.any(y <= 0.0):
            raise ValueError("observations must be strictly positive")
        self.x = x
        self.y = y

    @property
    def n(self) -> int:
        return int(self.x.size)

    @classmethod
    def from_pairs(cls, pairs, label: str = "") -> "Dataset":
        arr = np.asarray(pairs, dtype=float)
        return cls(arr[:, 0], arr[:, 1], label=label)


def _parse_pair(fields: list[str]) -> tuple[float, float] | None:
    if len(fields) != 2:
        return None
    try:
        x = float(fields[0])
        y = float(fields[1])
    except ValueError:
        return None
    if not (np.isfinite(x) and np.isfinite(y)) or x <= 0.0 or y <= 0.0:
        return None
    return x, y


def load_dataset(path, label: str | None = None) -> Dataset:
    """Parse a two-column CSV of positive pairs into a Dataset.

    The first line may be a header; it is skipped when it does not parse
    as two numbers.  Any later bad row aborts the load, and the error
    message lists every offending line number.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    rows: list[tuple[float, float]] = []
    bad: list[int] = []
    saw_content = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        pair = _parse_pair(fields)
        if pair is None:
            if not saw_content:
                saw_content = True  # header row, skipped
                continue
            bad.append(lineno)
            continue
        saw_content = True
        rows.append(pair)
    if bad:
        listing = ", ".join(str(b) for b in bad)
        raise IngestionError(f"{path}: invalid rows at line(s) {listing}")
    if not rows:
        raise IngestionError(f"{path}: no valid data rows")
    arr = np.asarray(rows, dtype=float)
    return Dataset(arr[:, 0], arr[:, 1], label=label if label is not None else path.stem)


def fmt(value: float) -> str:
    """Render a float with 17 significant digits (lossless round-trip)."""
    return format(float(value), ".17g")


def save_dataset(path, data: Dataset) -> None:
    """Write a Dataset back out in the same CSV schema, with header."""
    lines = ["x,y"]
    lines.extend(f"{fmt(a)},{fmt(b)}" for a, b in zip(data.x, data.y))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError(f"non-finite value {value!r} has no JSON rendering")
        return fmt(value)
    if isinstance(value, str):
        import json

        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(obj, indent: int = 0) -> str:
    """Serialize nested dict/list/scalars with 17-digit floats.

    The standard encoder offers no hook for float formatting, hence this
    small deterministic writer; key order follows dict insertion order.
    """
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{_json_scalar(str(k))}: {dumps_json(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = [f"{inner}{dumps_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _json_scalar(obj)
