"""Minimal deterministic SVG output: ranked bar charts and dot strips.

Hand-rolled markup with fixed float formatting and no timestamps, so the
same data always yields byte-identical files.
"""

from __future__ import annotations

import html

import numpy as np

_FONT = 'font-family="monospace" font-size="11"'


def _doc(width: int, height: int, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def bar_chart(labels: list[str], values: list[float], title: str,
              value_format: str = "{:.3f}") -> str:
    """Horizontal bar chart, one row per label, widths scaled to max |value|."""
    n = len(labels)
    row_h, label_w, bar_w = 18, 220, 420
    width = label_w + bar_w + 120
    height = 40 + n * row_h + 10
    body = [f'<text x="10" y="20" {_FONT} font-weight="bold">{html.escape(title)}</text>']
    vmax = max((abs(v) for v in values), default=0.0) or 1.0
    for i, (label, value) in enumerate(zip(labels, values)):
        y = 40 + i * row_h
        w = abs(value) / vmax * bar_w
        color = "#4878a8" if value >= 0 else "#b05050"
        body.append(
            f'<text x="{label_w - 6}" y="{y + 12:.1f}" {_FONT} text-anchor="end">'
            f"{html.escape(str(label))}</text>"
        )
        body.append(
            f'<rect x="{label_w}" y="{y + 2}" width="{w:.2f}" height="{row_h - 6}" fill="{color}"/>'
        )
        body.append(
            f'<text x="{label_w + w + 6:.2f}" y="{y + 12}" {_FONT}>'
            f"{value_format.format(value)}</text>"
        )
    return _doc(width, height, body)


def _heat_color(t: float) -> str:
    """Blue (low) to red (high) ramp for normalized values in [0, 1]."""
    t = min(max(t, 0.0), 1.0)
    r = int(40 + 200 * t)
    b = int(200 - 160 * t)
    return f"rgb({r},80,{b})"


def dot_strip(labels: list[str], rows: list[np.ndarray], colors: list[np.ndarray],
              title: str) -> str:
    """One horizontal strip per label: dot x-position is the value, color the
    normalized companion value (feature magnitude)."""
    n = len(labels)
    row_h, label_w, strip_w = 20, 220, 480
    width = label_w + strip_w + 40
    height = 50 + n * row_h + 10
    lo = min((float(r.min()) for r in rows if r.size), default=-1.0)
    hi = max((float(r.max()) for r in rows if r.size), default=1.0)
    if hi <= lo:
        hi = lo + 1.0
    scale = strip_w / (hi - lo)
    body = [f'<text x="10" y="20" {_FONT} font-weight="bold">{html.escape(title)}</text>']
    zero_x = label_w + (0.0 - lo) * scale
    if lo <= 0.0 <= hi:
        body.append(
            f'<line x1="{zero_x:.1f}" y1="36" x2="{zero_x:.1f}" y2="{height - 10}" '
            'stroke="#999999" stroke-dasharray="3,3"/>'
        )
    for i, (label, vals, cols) in enumerate(zip(labels, rows, colors)):
        y = 50 + i * row_h
        body.append(
            f'<text x="{label_w - 6}" y="{y + 4}" {_FONT} text-anchor="end">'
            f"{html.escape(str(label))}</text>"
        )
        cmin = float(cols.min()) if cols.size else 0.0
        cmax = float(cols.max()) if cols.size else 1.0
        spread = (cmax - cmin) or 1.0
        for v, c in zip(vals, cols):
            x = label_w + (float(v) - lo) * scale
            body.append(
                f'<circle cx="{x:.2f}" cy="{y:.1f}" r="2.2" '
                f'fill="{_heat_color((float(c) - cmin) / spread)}" fill-opacity="0.75"/>'
            )
    return _doc(width, height, body)
