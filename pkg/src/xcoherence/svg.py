"""Standalone SVG scatter plots with family overlays, no plotting library."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .ensemble import HEADER, EnsembleRecord
from .measures import MEASURE_FUNCTIONS
from .xstates import FamilyKind, make_family

OVERLAY_GRID = 201
WIDTH, HEIGHT = 480, 400
MARGIN = dict(left=60, right=20, top=30, bottom=50)
FAMILY_STYLE = {
    FamilyKind.MNMS: ("#d62728", "MNMS"),
    FamilyKind.MEMS: ("#2ca02c", "MEMS"),
    FamilyKind.WERNER: ("#e377c2", "Werner"),
    FamilyKind.RHO_L: ("#000000", "rho_L"),
}
SAMPLE_COLOR = "#1f77b4"


@dataclass(frozen=True)
class FigureSpec:
    x_column: str
    y_column: str
    overlays: tuple[FamilyKind, ...] = ()
    output: Path | str = "figure.svg"
    title: str = ""
    grid: int = field(default=OVERLAY_GRID)

    def __post_init__(self):
        for c in (self.x_column, self.y_column):
            if c not in HEADER:
                raise ValueError(f"unknown column {c!r}")
        object.__setattr__(self, "overlays", tuple(FamilyKind(k) for k in self.overlays))


def overlay_points(kind: FamilyKind, x_column: str, y_column: str,
                   grid: int = OVERLAY_GRID) -> list[tuple[float, float]]:
    """``(x, y)`` along a family for ``grid`` evenly spaced epsilon values."""
    fx, fy = _column_function(x_column), _column_function(y_column)
    pts = []
    for k in range(grid):
        s = make_family(kind, k / (grid - 1))
        pts.append((fx(s), fy(s)))
    return pts


def _column_function(name):
    if name in MEASURE_FUNCTIONS:
        return MEASURE_FUNCTIONS[name]
    return lambda s: _state_value(s, name)


def _state_value(s, name):
    return {
        "rho11": s.r11, "rho22": s.r22, "rho33": s.r33, "rho44": s.r44,
        "re_rho14": s.r14.real, "im_rho14": s.r14.imag,
        "re_rho23": s.r23.real, "im_rho23": s.r23.imag,
    }[name]


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    span = hi - lo
    raw = span / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _bounds(values: Sequence[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 1.0
    lo, hi = min(0.0, min(values)), max(values)
    if hi - lo < 1e-12:
        hi = lo + 1.0
    return lo, hi


def render_svg(spec: FigureSpec, records: Sequence[EnsembleRecord]) -> str:
    xs = [r[spec.x_column] for r in records]
    ys = [r[spec.y_column] for r in records]
    overlays = {k: overlay_points(k, spec.x_column, spec.y_column, spec.grid)
                for k in spec.overlays}
    all_x = xs + [p[0] for pts in overlays.values() for p in pts]
    all_y = ys + [p[1] for pts in overlays.values() for p in pts]
    x0, x1 = _bounds(all_x)
    y0, y1 = _bounds(all_y)
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN["top"] + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if spec.title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" '
                   f'font-size="14">{escape(spec.title)}</text>')
    out.append(f'<g class="axes" stroke="black" fill="none">'
               f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}"/></g>')
    out.append('<g class="ticks" font-size="11">')
    for t in _nice_ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{MARGIN["top"] + ph}" x2="{px(t):.2f}" '
                   f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{MARGIN["top"] + ph + 18}" '
                   f'text-anchor="middle">{t:g}</text>')
    for t in _nice_ticks(y0, y1):
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{py(t):.2f}" x2="{MARGIN["left"]}" '
                   f'y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py(t) + 4:.2f}" '
                   f'text-anchor="end">{t:g}</text>')
    out.append("</g>")
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 10}" '
               f'text-anchor="middle" font-size="13">{escape(spec.x_column)}</text>')
    out.append(f'<text x="15" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
               f'font-size="13" transform="rotate(-90 15 {MARGIN["top"] + ph / 2:.1f})">'
               f'{escape(spec.y_column)}</text>')
    out.append(f'<g class="samples" fill="{SAMPLE_COLOR}" fill-opacity="0.5">')
    for x, y in zip(xs, ys):
        out.append(f'<circle class="sample" cx="{px(x):.2f}" cy="{py(y):.2f}" r="1.2"/>')
    out.append("</g>")
    for kind, pts in overlays.items():
        color, _ = FAMILY_STYLE[kind]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        out.append(f'<polyline class="family {kind.value}" points="{coords}" fill="none" '
                   f'stroke="{color}" stroke-width="1.8"/>')
    if overlays:
        out.append('<g class="legend" font-size="11">')
        for k, kind in enumerate(overlays):
            color, label = FAMILY_STYLE[kind]
            ly = MARGIN["top"] + 14 + 16 * k
            lx = MARGIN["left"] + 10
            out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" stroke="{color}" '
                       f'stroke-width="2"/>')
            out.append(f'<text x="{lx + 24}" y="{ly + 4}">{escape(label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_scatter(spec: FigureSpec, records: Sequence[EnsembleRecord]) -> Path:
    path = Path(spec.output)
    path.write_text(render_svg(spec, records), encoding="utf-8")
    return path
