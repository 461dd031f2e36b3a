"""CSV and JSONL rendering of sweep records."""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any, Final, TextIO

from pyhyperdense.experiments import SweepRecord
from pyhyperdense.result import Err, LoadResult, Ok

SWEEP_COLUMNS: Final[tuple[str, ...]] = SweepRecord._fields
FLOAT_DIGITS: Final[int] = 9


def format_cell(value: Any) -> str:
    """Text of one CSV cell; floats keep 9 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{FLOAT_DIGITS}g}"
    return str(value)


def write_csv(records: Iterable[SweepRecord], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow({key: format_cell(val) for key, val in record._asdict().items()})


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def json_line(record: Mapping[str, Any]) -> str:
    """One sorted-key JSON object without trailing newline."""
    return json.dumps(_jsonable(record), sort_keys=True, separators=(",", ":"))


def write_jsonl(records: Iterable[Mapping[str, Any]], stream: TextIO) -> None:
    for record in records:
        stream.write(json_line(record) + "\n")


def sweep_csv_text(records: Iterable[SweepRecord]) -> str:
    buffer = io.StringIO()
    write_csv(records, buffer)
    return buffer.getvalue()


def read_csv_rows(path: str | Path) -> LoadResult[list[dict[str, str]]]:
    """Load a CSV file with a header row.

    Returns:
        LoadResult:     Rows keyed by column name, or a message naming the problem
    """
    try:
        with open(path, "r", newline="", encoding="utf-8") as file:
            reader = csv.DictReader(file)
            rows = list(reader)
            columns = reader.fieldnames
    except OSError as exc:
        return Err(f"Cannot read {path}: {exc.strerror}")
    except csv.Error as exc:
        return Err(f"Malformed CSV {path}: {exc}")
    if not columns:
        return Err(f"CSV {path} has no header row")
    return Ok(rows)
