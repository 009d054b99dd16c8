"""Deterministic CSV / Markdown / SVG output writers.

Every artefact starts with a header line carrying its denominator, the match
threshold it was produced under and the generation date, so a table can be
read on its own without the run settings to hand.  CSV and Markdown use a '#'
comment line; SVG carries the same payload in an XML comment.
"""

from __future__ import annotations

import csv
import html
from datetime import date
from pathlib import Path
from typing import Sequence


def header_line(denominator: int | str, threshold: float) -> str:
    return (
        f"# denominator={denominator} threshold={threshold!r} "
        f"generated={date.today().isoformat()}"
    )


def write_table_csv(
    path: str | Path,
    denominator: int | str,
    threshold: float,
    columns: Sequence[str],
    rows: Sequence[Sequence[str]],
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header_line(denominator, threshold) + "\r\n")
        writer = csv.writer(fh)
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow(list(row))


def read_table_csv(
    path: str | Path,
) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Re-parse an emitted CSV: (header metadata, column names, data rows)."""
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("# "):
            raise ValueError(f"{path}: missing '# ' header comment line")
        meta = {}
        for chunk in first[2:].strip().split():
            key, _, value = chunk.partition("=")
            meta[key] = value
        reader = csv.reader(fh)
        table = list(reader)
    if not table:
        raise ValueError(f"{path}: no column row after the header comment")
    columns, rows = table[0], table[1:]
    for i, row in enumerate(rows):
        if len(row) != len(columns):
            raise ValueError(f"{path}: row {i} has {len(row)} cells, expected {len(columns)}")
    return meta, columns, rows


def write_table_md(
    path: str | Path,
    denominator: int | str,
    threshold: float,
    columns: Sequence[str],
    rows: Sequence[Sequence[str]],
    notes: Sequence[str] = (),
) -> None:
    lines = [header_line(denominator, threshold), ""]
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("| " + " | ".join("---" for _ in columns) + " |")
    for row in rows:
        lines.append("| " + " | ".join(str(cell) for cell in row) + " |")
    for note in notes:
        lines.extend(["", note])
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# --- SVG bar charts ---------------------------------------------------------

_WIDTH = 800
_HEIGHT = 500
_MARGIN_LEFT = 280
_MARGIN_RIGHT = 80
_MARGIN_TOP = 56
_MARGIN_BOTTOM = 24
_BAR_FILL = "#4c78a8"
_BAR_FILL_NEGATIVE = "#e45756"


def render_bar_chart(
    title: str,
    labels: Sequence[str],
    values: Sequence[float],
    value_format: str = "{:.2f}",
) -> str:
    """A horizontal bar chart as a standalone SVG string.

    Categories run down the y-axis; values may be negative, in which case the
    bars extend left of the zero axis.
    """
    if len(labels) != len(values):
        raise ValueError("labels and values must have the same length")
    if not labels:
        raise ValueError("cannot render an empty chart")
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    vmin = min(0.0, min(values))
    vmax = max(0.0, max(values))
    if vmax == vmin:
        vmax = vmin + 1.0
    span = vmax - vmin

    def x_at(value: float) -> float:
        return _MARGIN_LEFT + (value - vmin) / span * plot_w

    slot = plot_h / len(labels)
    bar_h = slot * 0.62
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="30" text-anchor="middle" '
        f'font-family="sans-serif" font-size="18">{html.escape(title)}</text>',
    ]
    zero_x = x_at(0.0)
    parts.append(
        f'<line x1="{zero_x:.2f}" y1="{_MARGIN_TOP}" x2="{zero_x:.2f}" '
        f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="#333333" stroke-width="1"/>'
    )
    for i, (label, value) in enumerate(zip(labels, values)):
        y = _MARGIN_TOP + i * slot + (slot - bar_h) / 2
        x_val = x_at(value)
        bar_x = min(zero_x, x_val)
        bar_w = abs(x_val - zero_x)
        fill = _BAR_FILL if value >= 0 else _BAR_FILL_NEGATIVE
        mid_y = y + bar_h / 2 + 4
        parts.append(
            f'<rect x="{bar_x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
            f'height="{bar_h:.2f}" fill="{fill}"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{mid_y:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{html.escape(label)}</text>'
        )
        value_text = html.escape(value_format.format(value))
        if value >= 0:
            parts.append(
                f'<text x="{x_val + 5:.2f}" y="{mid_y:.2f}" text-anchor="start" '
                f'font-family="sans-serif" font-size="12">{value_text}</text>'
            )
        else:
            parts.append(
                f'<text x="{x_val - 5:.2f}" y="{mid_y:.2f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="12">{value_text}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def write_figure_svg(
    path: str | Path,
    denominator: int | str,
    threshold: float,
    title: str,
    labels: Sequence[str],
    values: Sequence[float],
    value_format: str = "{:.2f}",
) -> None:
    comment = f"<!-- denominator={denominator} threshold={threshold!r} generated={date.today().isoformat()} -->"
    svg = render_bar_chart(title, labels, values, value_format)
    Path(path).write_text(comment + "\n" + svg + "\n", encoding="utf-8")
