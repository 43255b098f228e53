"""Poincare-disk figure of the harvested elliptic points."""

from __future__ import annotations

from typing import List

from .metric import geodesic_point, to_disk
from .report import Analysis

SIZE = 640
RADIUS = 300.0
ARC_SAMPLES = 64

ORDER_COLORS = {
    2: "#1f77b4",
    3: "#d62728",
    4: "#2ca02c",
    5: "#9467bd",
    6: "#8c564b",
    7: "#ff7f0e",
}
DEFAULT_COLOR = "#7f7f7f"


def _xy(w: complex):
    c = SIZE / 2.0
    return c + RADIUS * w.real, c - RADIUS * w.imag


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(an: Analysis) -> str:
    c = SIZE / 2.0
    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>elliptic fixed points of {an.preset_name}</title>",
        f'<circle class="boundary" cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(RADIUS)}" fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    if an.gap is not None:
        p, q = an.gap.points
        pts = [to_disk(geodesic_point(p, q, k / ARC_SAMPLES)) for k in range(ARC_SAMPLES + 1)]
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(_xy, pts))
        out.append(f'<polyline class="min-gap" points="{coords}" fill="none" stroke="black" stroke-width="2.5"/>')
    for e in an.points.points:
        x, y = _xy(to_disk(e.point))
        color = ORDER_COLORS.get(e.order, DEFAULT_COLOR)
        out.append(
            f'<circle class="elliptic" data-order="{e.order}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{color}"/>'
        )
    if an.gap is not None:
        for i in an.gap.pair:
            x, y = _xy(to_disk(an.points.points[i].point))
            out.append(
                f'<circle class="min-pair" cx="{_fmt(x)}" cy="{_fmt(y)}" r="7" fill="none" stroke="black" stroke-width="1.5"/>'
            )
        out.append(f'<text x="10" y="{SIZE - 10}" font-size="14">d_min = {an.gap.d_min:.9f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(an: Analysis, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(an))
