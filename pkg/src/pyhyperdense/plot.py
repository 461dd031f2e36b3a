"""Self-contained SVG heatmaps of sweep output."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Final, Optional
from xml.sax.saxutils import escape

from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.records import read_csv_rows

CELL: Final[int] = 40
MARGIN_LEFT: Final[int] = 90
MARGIN_TOP: Final[int] = 40
MARGIN_BOTTOM: Final[int] = 60
LEGEND_WIDTH: Final[int] = 170

VERDICT_COLORS: Final[dict[str, str]] = {
    "Undetectable": "#d62728",
    "DetectableDegree": "#2ca02c",
    "DetectableScan": "#2ca02c",
    "DetectableBoth": "#2ca02c",
    "Indeterminate": "#9e9e9e",
}
ERROR_COLOR: Final[str] = "#000000"
RAMP_LOW: Final[tuple[int, int, int]] = (0xFF, 0xF5, 0xEB)
RAMP_HIGH: Final[tuple[int, int, int]] = (0x7F, 0x27, 0x04)


def _label(value: float) -> str:
    return f"{value:.6g}"


def _axis_value(row: Mapping[str, str], column: str) -> float:
    try:
        return float(row[column])
    except (TypeError, ValueError):
        raise HdException(
            HdStatus.PARSE_ERROR, f"Column {column!r} holds non-numeric value {row[column]!r}!"
        ) from None


def ramp_color(value: float, low: float, high: float) -> str:
    """Linear interpolation between the two ramp colors."""
    frac = 0.0 if high <= low else min(1.0, max(0.0, (value - low) / (high - low)))
    rgb = (round(a + (b - a) * frac) for a, b in zip(RAMP_LOW, RAMP_HIGH))
    return "#" + "".join(f"{c:02x}" for c in rgb)


def _check_columns(rows: Sequence[Mapping[str, str]], columns: Sequence[str]) -> None:
    if not rows:
        raise HdException(HdStatus.RAGGED_GRID, "CSV holds no data rows!")
    missing = [c for c in columns if c not in rows[0]]
    if missing:
        raise HdException(HdStatus.PARSE_ERROR, f"CSV lacks columns {missing}!")


def _grid(
    rows: Sequence[Mapping[str, str]], x: str, y: str, value: str
) -> tuple[list[float], list[float], dict[tuple[float, float], str]]:
    cells: dict[tuple[float, float], str] = {}
    duplicates = []
    for row in rows:
        key = (_axis_value(row, x), _axis_value(row, y))
        if key in cells:
            duplicates.append(key)
        cells[key] = row[value] or ""
    if duplicates:
        listed = ", ".join(f"({_label(a)}, {_label(b)})" for a, b in duplicates)
        raise HdException(HdStatus.RAGGED_GRID, f"Cells appear more than once: {listed}")

    xs = sorted({k[0] for k in cells})
    ys = sorted({k[1] for k in cells})
    missing = [(a, b) for b in ys for a in xs if (a, b) not in cells]
    if missing:
        listed = ", ".join(f"({x}={_label(a)}, {y}={_label(b)})" for a, b in missing)
        raise HdException(HdStatus.RAGGED_GRID, f"Grid is not rectangular, missing cells: {listed}")
    return xs, ys, cells


def _numeric(text: str) -> Optional[float]:
    try:
        out = float(text)
    except ValueError:
        return None
    return out if math.isfinite(out) else None


def render_heatmap(rows: Sequence[Mapping[str, str]], x: str, y: str, value: str) -> str:
    """Render one column of a rectangular sweep as an SVG heatmap.

    The verdict column is drawn with the region colors (red undetectable,
    green detectable, grey indeterminate); any other column uses a two-color
    ramp between its minimum and maximum. Empty or non-numeric cells
    (failed sweep cells) are black.

    Raises:
        HdException:    RAGGED_GRID when some (x, y) cell is missing or repeated
    """
    _check_columns(rows, (x, y, value))
    xs, ys, cells = _grid(rows, x, y, value)
    categorical = value == "verdict"

    numbers = [v for v in (_numeric(t) for t in cells.values()) if v is not None]
    low, high = (min(numbers), max(numbers)) if numbers else (0.0, 0.0)

    def fill(text: str) -> str:
        if categorical:
            return VERDICT_COLORS.get(text, ERROR_COLOR)
        number = _numeric(text)
        return ERROR_COLOR if number is None else ramp_color(number, low, high)

    width = MARGIN_LEFT + CELL * len(xs) + LEGEND_WIDTH
    height = MARGIN_TOP + CELL * len(ys) + MARGIN_BOTTOM
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<text x="{MARGIN_LEFT}" y="{MARGIN_TOP // 2}" font-size="13">{escape(value)}</text>',
    ]

    # y grows upwards
    for j, yv in enumerate(ys):
        top = MARGIN_TOP + CELL * (len(ys) - 1 - j)
        out.append(
            f'<text x="{MARGIN_LEFT - 6}" y="{top + CELL // 2 + 4}" text-anchor="end">{_label(yv)}</text>'
        )
        for i, xv in enumerate(xs):
            text = cells[(xv, yv)]
            out.append(
                f'<rect x="{MARGIN_LEFT + CELL * i}" y="{top}" width="{CELL}" height="{CELL}" '
                f'fill="{fill(text)}" stroke="#ffffff"><title>{escape(x)}={_label(xv)} '
                f"{escape(y)}={_label(yv)} {escape(value)}={escape(text)}</title></rect>"
            )

    base = MARGIN_TOP + CELL * len(ys)
    for i, xv in enumerate(xs):
        out.append(
            f'<text x="{MARGIN_LEFT + CELL * i + CELL // 2}" y="{base + 16}" '
            f'text-anchor="middle">{_label(xv)}</text>'
        )
    out.append(
        f'<text x="{MARGIN_LEFT + CELL * len(xs) // 2}" y="{base + 40}" '
        f'text-anchor="middle" font-size="13">{escape(x)}</text>'
    )
    out.append(
        f'<text x="20" y="{MARGIN_TOP + CELL * len(ys) // 2}" font-size="13" '
        f'transform="rotate(-90 20 {MARGIN_TOP + CELL * len(ys) // 2})" '
        f'text-anchor="middle">{escape(y)}</text>'
    )
    out.extend(_legend(MARGIN_LEFT + CELL * len(xs) + 20, categorical, low, high))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _legend(left: int, categorical: bool, low: float, high: float) -> list[str]:
    entries: list[tuple[str, str]]
    if categorical:
        entries = [
            ("Undetectable", VERDICT_COLORS["Undetectable"]),
            ("Detectable", VERDICT_COLORS["DetectableBoth"]),
            ("Indeterminate", VERDICT_COLORS["Indeterminate"]),
            ("Error", ERROR_COLOR),
        ]
    else:
        entries = [(_label(low), ramp_color(low, low, high)), (_label(high), ramp_color(high, low, high))]

    out = []
    for k, (name, color) in enumerate(entries):
        top = MARGIN_TOP + 18 * k
        out.append(f'<rect x="{left}" y="{top}" width="12" height="12" fill="{color}" stroke="#333333"/>')
        out.append(f'<text x="{left + 18}" y="{top + 10}">{escape(name)}</text>')
    return out


def plot_csv(path: str | Path, x: str, y: str, value: str) -> str:
    """Read a sweep CSV and render the heatmap of one column.

    Raises:
        HdException:    PARSE_ERROR for unreadable files, RAGGED_GRID for incomplete grids
    """
    rows = read_csv_rows(path).unwrap(lambda msg: HdException(HdStatus.PARSE_ERROR, msg))
    return render_heatmap(rows, x, y, value)
