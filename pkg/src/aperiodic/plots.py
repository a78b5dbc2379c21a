"""Deterministic SVG and CSV renderings of clouds and supports.

The only place floats exist is pixel coordinates inside SVG files; all
geometry is computed exactly first.  Output bytes depend only on the
input objects, never on time or environment.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .algebra import LaurentPoly
from .delone import PointCloud
from .forced import convex_hull_2d, edge_normal_rays

_PALETTE = ("#1f6f43", "#b54708", "#345a9b", "#8f2f56", "#5b5b5b", "#8a7a1f")


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".")


def _svg(width: int, height: int, body: list) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _color_for(colors: Sequence, value) -> str:
    return _PALETTE[sorted(colors).index(value) % len(_PALETTE)]


def ticks_1d_svg(cloud: PointCloud, path: Optional[str] = None,
                 width: int = 900, height: int = 140) -> str:
    """Tick marks on a line, one per point, colored by point color."""
    if cloud.basis.dim != 1:
        raise ValueError("tick plot needs a 1-D cloud")
    lo = float(cloud.window.bounds[0][0])
    hi = float(cloud.window.bounds[0][1])
    span = hi - lo or 1.0
    pad = 30.0
    colors = sorted({cloud.color(p) for p in cloud.points})
    body = [f'<line x1="{_fmt(pad)}" y1="{_fmt(height / 2)}" '
            f'x2="{_fmt(width - pad)}" y2="{_fmt(height / 2)}" '
            'stroke="#999" stroke-width="1"/>']
    for p in sorted(cloud.points, key=cloud.emb):
        x = pad + (float(Fraction(cloud.emb(p)[0], cloud.scale)) - lo) \
            / span * (width - 2 * pad)
        col = _color_for(colors, cloud.color(p))
        body.append(f'<line x1="{_fmt(x)}" y1="{_fmt(height / 2 - 18)}" '
                    f'x2="{_fmt(x)}" y2="{_fmt(height / 2 + 18)}" '
                    f'stroke="{col}" stroke-width="2"/>')
    body.append(f'<text x="{_fmt(pad)}" y="{_fmt(height - 8.0)}" '
                f'font-size="12" fill="#555">[{lo:g}, {hi:g}] '
                f'{len(cloud.points)} points</text>')
    text = _svg(width, height, body)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def scatter_2d_svg(cloud: PointCloud, path: Optional[str] = None,
                   radius: Optional[Fraction] = None, width: int = 720) -> str:
    """Dots in the plane; optional exact-radius circles around each."""
    if cloud.basis.dim != 2:
        raise ValueError("scatter plot needs a 2-D cloud")
    (x0, x1), (y0, y1) = cloud.window.bounds
    spanx = float(x1 - x0) or 1.0
    spany = float(y1 - y0) or 1.0
    pad = 30.0
    height = int(pad * 2 + (width - 2 * pad) * spany / spanx)
    scale = (width - 2 * pad) / spanx
    colors = sorted({cloud.color(p) for p in cloud.points})

    def to_px(p):
        e = cloud.emb(p)
        ex = float(Fraction(e[0], cloud.scale))
        ey = float(Fraction(e[1], cloud.scale))
        return (pad + (ex - float(x0)) * scale,
                height - pad - (ey - float(y0)) * scale)

    body = [f'<rect x="{_fmt(pad)}" y="{_fmt(pad)}" '
            f'width="{_fmt(width - 2 * pad)}" height="{_fmt(height - 2 * pad)}" '
            'fill="none" stroke="#bbb"/>']
    for p in sorted(cloud.points):
        x, y = to_px(p)
        col = _color_for(colors, cloud.color(p))
        if radius is not None:
            body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" '
                        f'r="{_fmt(float(radius) * scale)}" fill="none" '
                        f'stroke="{col}" stroke-opacity="0.35"/>')
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{col}"/>')
    text = _svg(width, height, body)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def support_polygon_svg(f: LaurentPoly, path: Optional[str] = None,
                        size: int = 420) -> str:
    """Support points, their hull, and outward edge normals."""
    if f.basis.dim != 2:
        raise ValueError("support plot needs a 2-D exponent embedding")
    pts = [f.basis.int_embed(v) for v in f.support()]
    hull = convex_hull_2d(pts)
    rays = edge_normal_rays(hull)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo_x, hi_x = min(xs) - 1, max(xs) + 1
    lo_y, hi_y = min(ys) - 1, max(ys) + 1
    span = max(hi_x - lo_x, hi_y - lo_y) or 1
    pad = 28.0
    scale = (size - 2 * pad) / span

    def to_px(p):
        return (pad + (p[0] - lo_x) * scale, size - pad - (p[1] - lo_y) * scale)

    body = []
    if len(hull) >= 2:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_px, hull))
        body.append(f'<polygon points="{coords}" fill="#dce8dd" stroke="#1f6f43"/>')
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    px_c = to_px((cx, cy))
    for ray in rays:
        n = max(abs(ray[0]), abs(ray[1]))
        end = (px_c[0] + ray[0] / n * 40.0, px_c[1] - ray[1] / n * 40.0)
        body.append(f'<line x1="{_fmt(px_c[0])}" y1="{_fmt(px_c[1])}" '
                    f'x2="{_fmt(end[0])}" y2="{_fmt(end[1])}" '
                    'stroke="#b54708" stroke-width="1.5"/>')
    for p in pts:
        x, y = to_px(p)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#345a9b"/>')
    text = _svg(size, size, body)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _frac_cell(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def counts_csv(rows, path: Optional[str] = None) -> str:
    """Patch-count table as exact CSV: T, count, threshold, trigger."""
    lines = ["T,count,threshold,trigger"]
    for row in rows:
        lines.append(",".join([_frac_cell(row["T"]), str(row["count"]),
                               _frac_cell(row["threshold"]),
                               str(int(row["trigger"]))]))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text
