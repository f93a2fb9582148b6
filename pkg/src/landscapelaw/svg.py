"""Minimal standalone log-log SVG line charts.

Diagnostic output only: decade ticks, a legend, one polyline per series.
Zero and negative points are omitted (they have no log-log image).
"""

import math
import os

import numpy as np

from .errors import InvalidArgumentError

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
WIDTH, HEIGHT = 640, 460
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 28, 44


def _decades(lo, hi):
    return range(int(math.ceil(lo - 1e-9)), int(math.floor(hi + 1e-9)) + 1)


def emit_svg_loglog(series, labels, path, title=None):
    """Write a log-log chart of the given (x, y) array pairs.

    series and labels run in parallel; at least one positive point is required
    overall.
    """
    if not series or len(series) != len(labels):
        raise InvalidArgumentError("need a non-empty series list matching the labels")
    cleaned = []
    for x, y in series:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        keep = (x > 0.0) & (y > 0.0) & np.isfinite(x) & np.isfinite(y)
        cleaned.append((x[keep], y[keep]))
    if not any(x.size for x, _ in cleaned):
        raise InvalidArgumentError("no positive points to plot")

    lx0 = min(math.log10(x.min()) for x, _ in cleaned if x.size)
    lx1 = max(math.log10(x.max()) for x, _ in cleaned if x.size)
    ly0 = min(math.log10(y.min()) for _, y in cleaned if y.size)
    ly1 = max(math.log10(y.max()) for _, y in cleaned if y.size)
    if lx1 - lx0 < 1e-9:
        lx0, lx1 = lx0 - 0.5, lx1 + 0.5
    if ly1 - ly0 < 1e-9:
        ly0, ly1 = ly0 - 0.5, ly1 + 0.5
    pad_x = 0.03 * (lx1 - lx0)
    pad_y = 0.05 * (ly1 - ly0)
    lx0, lx1 = lx0 - pad_x, lx1 + pad_x
    ly0, ly1 = ly0 - pad_y, ly1 + pad_y

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (math.log10(x) - lx0) / (lx1 - lx0) * pw

    def sy(y):
        return MARGIN_T + (ly1 - math.log10(y)) / (ly1 - ly0) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="#444"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="17" text-anchor="middle" font-size="13">'
            f"{title}</text>"
        )
    for k in _decades(lx0, lx1):
        x = sx(10.0**k)
        parts.append(
            f'<line x1="{x:.1f}" y1="{MARGIN_T}" x2="{x:.1f}" y2="{MARGIN_T + ph}" '
            f'stroke="#ddd"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{MARGIN_T + ph + 16}" text-anchor="middle">1e{k}</text>'
        )
    for k in _decades(ly0, ly1):
        y = sy(10.0**k)
        parts.append(
            f'<line x1="{MARGIN_L}" y1="{y:.1f}" x2="{MARGIN_L + pw}" y2="{y:.1f}" '
            f'stroke="#ddd"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 6}" y="{y + 4:.1f}" text-anchor="end">1e{k}</text>'
        )
    for i, ((x, y), label) in enumerate(zip(cleaned, labels)):
        color = PALETTE[i % len(PALETTE)]
        if x.size:
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        ly = MARGIN_T + 14 + 16 * i
        lx = MARGIN_L + pw - 150
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{lx + 28}" y="{ly}">{label}</text>')
    parts.append("</svg>")

    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
    os.replace(tmp, path)
    return path
