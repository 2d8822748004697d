"""Deterministic SVG drawings of arrangements (display only)."""
from __future__ import annotations

from itertools import combinations

from .kernel import Instance, Point, mpq


def _num(v) -> str:
    return f"{float(v):.12g}"


def arrangement_points(instance: Instance) -> list:
    pts = set()
    lines = instance.lines
    for g, h in combinations(lines, 2):
        if g.a != h.a:
            x = (h.b - g.b) / (g.a - h.a)
            pts.add(Point(x, g.at(x)))
    for v in instance.verticals:
        for l in lines:
            pts.add(Point(v.x0, l.at(v.x0)))
    return sorted(pts)


def _box(points, instance):
    if points:
        xs = [p.x for p in points]
        ys = [p.y for p in points]
    else:
        xs = [mpq(-1), mpq(1)] + [v.x0 for v in instance.verticals]
        ys = [l.b for l in instance.lines] or [mpq(0)]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = (x1 - x0) or mpq(2)
    h = (y1 - y0) or mpq(2)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    return x0 - w / 5, x1 + w / 5, y0 - h / 5, y1 + h / 5


def _clip(line, box):
    x0, x1, y0, y1 = box
    lo, hi = x0, x1
    if line.a != 0:
        xa, xb = (y0 - line.b) / line.a, (y1 - line.b) / line.a
        lo, hi = max(lo, min(xa, xb)), min(hi, max(xa, xb))
    elif not y0 <= line.b <= y1:
        return None
    if lo > hi:
        return None
    return Point(lo, line.at(lo)), Point(hi, line.at(hi))


def render(instance: Instance, chain=None, marked=(), title: str = "") -> str:
    """SVG text: all lines, an optional level chain, and marked vertices."""
    points = arrangement_points(instance)
    box = _box(points, instance)
    x0, x1, y0, y1 = box
    w, h = x1 - x0, y1 - y0
    r = max(w, h) / 120
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="600" '
        f'viewBox="{_num(x0)} {_num(-y1)} {_num(w)} {_num(h)}" preserveAspectRatio="none">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g transform="scale(1,-1)" fill="none" stroke-linecap="round">')
    for l in instance.lines:
        seg = _clip(l, box)
        if seg is None:
            continue
        p, q = seg
        out.append(f'<line x1="{_num(p.x)}" y1="{_num(p.y)}" x2="{_num(q.x)}" y2="{_num(q.y)}" '
                   f'stroke="#555" stroke-width="1" vector-effect="non-scaling-stroke"/>')
    for v in instance.verticals:
        out.append(f'<line x1="{_num(v.x0)}" y1="{_num(y0)}" x2="{_num(v.x0)}" y2="{_num(y1)}" '
                   f'stroke="#888" stroke-dasharray="4 3" stroke-width="1" vector-effect="non-scaling-stroke"/>')
    if chain is not None:
        pts = [Point(x0, chain.edges[0].at(x0))] + [v.point for v in chain.vertices]
        pts.append(Point(x1, chain.edges[-1].at(x1)))
        coords = " ".join(f"{_num(p.x)},{_num(p.y)}" for p in pts)
        out.append(f'<polyline points="{coords}" stroke="#d62728" stroke-width="3" vector-effect="non-scaling-stroke"/>')
    for p in points:
        out.append(f'<circle cx="{_num(p.x)}" cy="{_num(p.y)}" r="{_num(r / 2)}" fill="#333" stroke="none"/>')
    for p in marked:
        out.append(f'<circle cx="{_num(p.x)}" cy="{_num(p.y)}" r="{_num(r * 1.5)}" fill="none" '
                   f'stroke="#1f77b4" stroke-width="2" vector-effect="non-scaling-stroke"/>')
    out.append("</g>")
    if not points:
        out.append(f'<text x="{_num(x0 + w / 20)}" y="{_num(-y1 + h / 10)}" font-size="{_num(h / 20)}" '
                   f'font-family="sans-serif">no vertices</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
