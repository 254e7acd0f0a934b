"""Minimal SVG writer for heatmaps and line charts (no plotting dependency)."""

from xml.sax.saxutils import escape

import numpy as np

__all__ = ["heatmap_svg", "line_chart_svg"]

WIDTH, HEIGHT = 640, 480
MARGIN = dict(left=70, right=90, top=40, bottom=60)
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#000000"]


def _viridis(v):
    # five-stop approximation of viridis, linearly interpolated
    stops = np.array([
        [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
    ], dtype=float)
    v = float(np.clip(v, 0.0, 1.0)) * (len(stops) - 1)
    i = min(int(v), len(stops) - 2)
    rgb = stops[i] + (v - i) * (stops[i + 1] - stops[i])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _frame(title, xlabel, ylabel):
    w = WIDTH - MARGIN["left"] - MARGIN["right"]
    h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{MARGIN["left"] + w / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>',
        f'<text x="18" y="{MARGIN["top"] + h / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN["top"] + h / 2})">{escape(ylabel)}</text>',
    ]
    return parts, w, h


def _ticks(lo, hi, n=5):
    return np.linspace(lo, hi, n)


def _axes(parts, w, h, xr, yr):
    x0, y0 = MARGIN["left"], MARGIN["top"]
    parts.append(f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="black"/>')
    for t in _ticks(*xr):
        px = x0 + (t - xr[0]) / (xr[1] - xr[0]) * w
        parts.append(f'<line x1="{px:.1f}" y1="{y0 + h}" x2="{px:.1f}" y2="{y0 + h + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{y0 + h + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(*yr):
        py = y0 + h - (t - yr[0]) / (yr[1] - yr[0]) * h
        parts.append(f'<line x1="{x0 - 5}" y1="{py:.1f}" x2="{x0}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{x0 - 8}" y="{py + 4:.1f}" text-anchor="end">{t:.3g}</text>')


def _span(values):
    lo, hi = float(np.nanmin(values)), float(np.nanmax(values))
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def heatmap_svg(x, y, z, title="", xlabel="", ylabel="", zlabel=""):
    """SVG text of ``z[i, j]`` drawn at (x[j], y[i]); NaN cells are grey."""
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    parts, w, h = _frame(title, xlabel, ylabel)
    xr, yr = _span(x), _span(y)
    zr = _span(z) if np.any(np.isfinite(z)) else (0.0, 1.0)
    cw, ch = w / len(x), h / len(y)
    for i in range(len(y)):
        for j in range(len(x)):
            v = z[i, j]
            fill = "#bbbbbb" if not np.isfinite(v) else _viridis((v - zr[0]) / (zr[1] - zr[0]))
            px = MARGIN["left"] + j * cw
            py = MARGIN["top"] + h - (i + 1) * ch
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{cw + 0.5:.2f}" height="{ch + 0.5:.2f}" fill="{fill}"/>'
            )
    # tick labels index the cell centers
    _axes(parts, w, h, xr, yr)
    bx = WIDTH - MARGIN["right"] + 20
    for k in range(50):
        py = MARGIN["top"] + h - (k + 1) * h / 50
        parts.append(f'<rect x="{bx}" y="{py:.2f}" width="15" height="{h / 50 + 0.5:.2f}" fill="{_viridis(k / 49)}"/>')
    parts.append(f'<text x="{bx + 20}" y="{MARGIN["top"] + 4}">{zr[1]:.3g}</text>')
    parts.append(f'<text x="{bx + 20}" y="{MARGIN["top"] + h}">{zr[0]:.3g}</text>')
    parts.append(f'<text x="{bx}" y="{MARGIN["top"] - 8}">{escape(zlabel)}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def line_chart_svg(series, title="", xlabel="", ylabel=""):
    """SVG text of one polyline per ``(label, x, y)`` entry of ``series``."""
    parts, w, h = _frame(title, xlabel, ylabel)
    allx = np.concatenate([np.asarray(s[1], float) for s in series])
    ally = np.concatenate([np.asarray(s[2], float) for s in series])
    xr, yr = _span(allx), _span(ally)
    _axes(parts, w, h, xr, yr)
    for idx, (label, xs, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        pts = []
        for xv, yv in zip(xs, ys):
            if not np.isfinite(yv):
                continue
            px = MARGIN["left"] + (xv - xr[0]) / (xr[1] - xr[0]) * w
            py = MARGIN["top"] + h - (yv - yr[0]) / (yr[1] - yr[0]) * h
            pts.append(f"{px:.2f},{py:.2f}")
        parts.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" stroke-width="2"/>')
        ly = MARGIN["top"] + 15 + 16 * idx
        lx = WIDTH - MARGIN["right"] + 5
        parts.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 15}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 18}" y="{ly + 4}" font-size="10">{escape(str(label))}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
