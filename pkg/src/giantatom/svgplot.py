"""Minimal SVG line plots: axes, ticks, labels and a legend, nothing else."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return []
    if hi == lo:
        return [lo]
    raw = (hi - lo) / max(1, target - 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(k * step, 12) for k in range(first, last + 1)]


def _fmt_tick(v: float) -> str:
    return f"{v:.6g}"


class LinePlot:
    def __init__(self, width=640, height=420, title="", xlabel="", ylabel=""):
        self.width = width
        self.height = height
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.series = []

    def add(self, x, y, label="", color=None, markers=False, dashed=False):
        pts = [(float(a), float(b)) for a, b in zip(x, y) if math.isfinite(a) and math.isfinite(b)]
        color = color or PALETTE[len(self.series) % len(PALETTE)]
        self.series.append((pts, label, color, markers, dashed))
        return self

    def _bounds(self):
        xs = [p[0] for s in self.series for p in s[0]]
        ys = [p[1] for s in self.series for p in s[0]]
        if not xs:
            return 0.0, 1.0, 0.0, 1.0
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 == y0:
            y0, y1 = y0 - 0.5, y1 + 0.5
        pad = 0.05 * (y1 - y0)
        return x0, x1, y0 - pad, y1 + pad

    def render(self) -> str:
        left, right, top, bottom = 70, 20, 40, 55
        pw = self.width - left - right
        ph = self.height - top - bottom
        x0, x1, y0, y1 = self._bounds()

        def sx(x):
            return left + (x - x0) / (x1 - x0) * pw

        def sy(y):
            return top + (1 - (y - y0) / (y1 - y0)) * ph

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="12">',
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>',
            f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        ]
        for t in nice_ticks(x0, x1):
            if x0 <= t <= x1:
                X = sx(t)
                out.append(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 5}" stroke="black"/>')
                out.append(f'<text x="{X:.2f}" y="{top + ph + 18}" text-anchor="middle">{_fmt_tick(t)}</text>')
        for t in nice_ticks(y0, y1):
            if y0 <= t <= y1:
                Y = sy(t)
                out.append(f'<line x1="{left - 5}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="black"/>')
                out.append(f'<text x="{left - 8}" y="{Y + 4:.2f}" text-anchor="end">{_fmt_tick(t)}</text>')
        if self.title:
            out.append(f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(self.title)}</text>')
        if self.xlabel:
            out.append(f'<text x="{left + pw / 2:.1f}" y="{self.height - 12}" text-anchor="middle">{escape(self.xlabel)}</text>')
        if self.ylabel:
            cy = top + ph / 2
            out.append(f'<text x="16" y="{cy:.1f}" text-anchor="middle" transform="rotate(-90 16 {cy:.1f})">{escape(self.ylabel)}</text>')

        for pts, label, color, markers, dashed in self.series:
            if not pts:
                continue
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
            dash = ' stroke-dasharray="6,4"' if dashed else ""
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
            if markers:
                for x, y in pts:
                    out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{color}"/>')

        labelled = [s for s in self.series if s[1]]
        for k, (_, label, color, _, dashed) in enumerate(labelled):
            y = top + 14 + 16 * k
            dash = ' stroke-dasharray="6,4"' if dashed else ""
            out.append(f'<line x1="{left + pw - 150}" y1="{y}" x2="{left + pw - 125}" y2="{y}" stroke="{color}" stroke-width="2"{dash}/>')
            out.append(f'<text x="{left + pw - 118}" y="{y + 4}">{escape(label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())
