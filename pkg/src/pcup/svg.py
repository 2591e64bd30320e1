"""SVG rendering of interval-indexed data in the upper-diagonal half plane.

The interval ``[a, b]`` is drawn at the point ``(a, b)``; the top band stands
for ``b = inf``.
"""

from __future__ import annotations

import math
from html import escape
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from .cup import CupLengthDiagram
from .invariants import SignedDiagram, StepInvariant

SIZE = 420
PAD = 48
INF_BAND = 28
PALETTE = ["#dbe9f6", "#9ecae1", "#6baed6", "#3182bd", "#08519c"]


def _fmt(x: float) -> str:
    return f"{x:.3g}"


def _label(v) -> str:
    v = np.asarray(v)
    if v.ndim == 0:
        return str(int(v))
    if v.ndim == 1:
        return "(" + ",".join(str(int(x)) for x in v) + ")"
    return "(" + " ".join("(" + ",".join(str(int(x)) for x in row) + ")" for row in v) + ")"


class _Frame:
    def __init__(self, grid: Sequence[float]):
        g = list(grid) or [0.0, 1.0]
        lo, hi = g[0], g[-1]
        span = hi - lo or 1.0
        self.lo, self.hi = lo, hi + 0.15 * span
        self.grid = list(grid)
        self.plot = SIZE - 2 * PAD

    def x(self, a: float) -> float:
        return PAD + (a - self.lo) / (self.hi - self.lo) * self.plot

    def y(self, b: float) -> float:
        if b == math.inf:
            return PAD - INF_BAND / 2
        return SIZE - PAD - (b - self.lo) / (self.hi - self.lo) * self.plot

    def axes(self) -> List[str]:
        out = [
            f'<line x1="{self.x(self.lo):.1f}" y1="{self.y(self.lo):.1f}" '
            f'x2="{self.x(self.hi):.1f}" y2="{self.y(self.hi):.1f}" stroke="black"/>',
            f'<line x1="{PAD}" y1="{SIZE - PAD}" x2="{SIZE - PAD}" y2="{SIZE - PAD}" stroke="#444"/>',
            f'<line x1="{PAD}" y1="{SIZE - PAD}" x2="{PAD}" y2="{PAD - INF_BAND}" stroke="#444"/>',
            f'<text x="{PAD - 6}" y="{PAD - INF_BAND / 2 + 4:.1f}" font-size="10" text-anchor="end">inf</text>',
        ]
        for g in self.grid:
            out.append(
                f'<text x="{self.x(g):.1f}" y="{SIZE - PAD + 14}" font-size="10" '
                f'text-anchor="middle">{_fmt(g)}</text>'
            )
            out.append(
                f'<text x="{PAD - 6}" y="{self.y(g) + 3:.1f}" font-size="10" '
                f'text-anchor="end">{_fmt(g)}</text>'
            )
        return out


def _cells(inv: Union[StepInvariant, SignedDiagram], frame: _Frame) -> List[str]:
    out = []
    g = list(inv.grid)
    m = len(g)
    vals = inv.values
    levels = sorted({_label(vals[i, j]) for i in range(m) for j in range(i, m + 1) if np.any(vals[i, j])})
    colour = {lab: PALETTE[min(k, len(PALETTE) - 1)] for k, lab in enumerate(levels)}
    right = g[1:] + [frame.hi]
    for i in range(m):
        x0, x1 = frame.x(g[i]), frame.x(right[i])
        for j in range(i, m + 1):
            v = vals[i, j]
            if not np.any(v):
                continue
            lab = _label(v)
            if j == m:
                y0, y1 = PAD - INF_BAND, PAD
            else:
                y0, y1 = frame.y(right[j]), frame.y(g[j])
            out.append(
                f'<rect x="{x0:.1f}" y="{y0:.1f}" width="{x1 - x0:.1f}" height="{y1 - y0:.1f}" '
                f'fill="{colour[lab]}" stroke="white" stroke-width="0.5"/>'
            )
            out.append(
                f'<text x="{(x0 + x1) / 2:.1f}" y="{(y0 + y1) / 2 + 3:.1f}" font-size="9" '
                f'text-anchor="middle">{escape(lab)}</text>'
            )
    return out


def _dots(points: Sequence[Tuple[float, float, str]], frame: _Frame) -> List[str]:
    out = []
    for a, b, lab in points:
        x, y = frame.x(a), frame.y(b)
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3.5" fill="#c0392b"/>')
        out.append(f'<text x="{x + 6:.1f}" y="{y - 4:.1f}" font-size="10">{escape(lab)}</text>')
    return out


def render(obj) -> str:
    """SVG text for a StepInvariant, SignedDiagram, CupLengthDiagram or bar list."""
    if isinstance(obj, (StepInvariant, SignedDiagram)):
        frame = _Frame(obj.grid)
        body = _cells(obj, frame)
    elif isinstance(obj, CupLengthDiagram):
        ends = [d for _, d in obj.entries if d != math.inf]
        frame = _Frame(sorted(set(obj.grid) | set(ends)))
        body = _dots([(b, d, str(v)) for (b, d), v in obj.items()], frame)
    else:
        bars = list(obj)
        ends = [x for bar in bars for x in bar if x != math.inf]
        frame = _Frame(sorted(set(ends)))
        body = _dots([(b, d, "") for b, d in bars], frame)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        *body,
        *frame.axes(),
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def emit_svg(obj, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(render(obj))
    return path
