"""Upper envelopes of non-vertical lines, case classification, vertical-line candidates."""
from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import NamedTuple

from .kernel import EmptyInstance, Point


class Case(enum.Enum):
    I = "I"
    II = "II"
    NO_VERTEX = "no-vertex"


class EnvelopeVertex(NamedTuple):
    point: Point
    lines: tuple  # ids of every input line through the point


@dataclass
class Envelope:
    vertices: list   # EnvelopeVertex, left to right
    edges: list      # supporting Line of each piece, left ray first
    edge_ids: list   # ids of all input lines coinciding with each piece

    @property
    def left_ids(self):
        return self.edge_ids[0]

    @property
    def right_ids(self):
        return self.edge_ids[-1]

    def _piece(self, x):
        xs = [v.point.x for v in self.vertices]
        return bisect_left(xs, x), xs

    def value_at(self, x):
        i, xs = self._piece(x)
        return self.edges[i].at(x)

    def top_at(self, x):
        """(point on the envelope at x, ids of the lines through it)."""
        i, xs = self._piece(x)
        if i < len(xs) and xs[i] == x:
            return self.vertices[i]
        line = self.edges[i]
        return EnvelopeVertex(Point(x, line.at(x)), self.edge_ids[i])


def _keeps_middle(l1, l2, l3) -> bool:
    # slopes a1 < a2 < a3: l2 shows up iff x(l1, l2) < x(l2, l3)
    return (l1.b - l2.b) * (l3.a - l2.a) < (l2.b - l3.b) * (l2.a - l1.a)


def upper_envelope(lines) -> Envelope:
    if not lines:
        raise EmptyInstance("upper envelope of no lines")
    order = sorted(lines, key=lambda l: (l.a, -l.b, l.id))
    tops = []
    ids = []
    for l in order:
        if tops and tops[-1].a == l.a:
            if tops[-1].b == l.b:
                ids[-1].append(l.id)
            continue
        tops.append(l)
        ids.append([l.id])
    hull, hull_ids = [], []
    for l, group in zip(tops, ids):
        while len(hull) >= 2 and not _keeps_middle(hull[-2], hull[-1], l):
            hull.pop()
            hull_ids.pop()
        hull.append(l)
        hull_ids.append(group)

    slopes = [l.a for l in order]
    vertices = []
    for g, h in zip(hull, hull[1:]):
        x = (h.b - g.b) / (g.a - h.a)
        y = g.a * x + g.b
        lo, hi = bisect_left(slopes, g.a), bisect_right(slopes, h.a)
        through = tuple(sorted(l.id for l in order[lo:hi] if l.a * x + l.b == y))
        vertices.append(EnvelopeVertex(Point(x, y), through))
    return Envelope(vertices, hull, [tuple(sorted(g)) for g in hull_ids])


def classify(env: Envelope) -> Case:
    if len(env.vertices) >= 2:
        return Case.I
    if len(env.vertices) == 1:
        return Case.II
    return Case.NO_VERTEX


class VerticalCandidate(NamedTuple):
    point: Point
    level: int
    lines: tuple   # non-vertical lines through the point
    vertical: int


def vertical_candidates(verticals, lines, mult=None, env=None) -> list:
    """Topmost point of each vertical line and its weighted strictly-below count."""
    if not verticals:
        return []
    mult = mult or {}
    env = env or upper_envelope(lines)
    total = sum(mult.get(l.id, 1) for l in lines)
    out = []
    for v in verticals:
        top = env.top_at(v.x0)
        level = total - sum(mult.get(i, 1) for i in top.lines)
        out.append(VerticalCandidate(top.point, level, top.lines, v.id))
    return out


def ray_hits_envelope(origin: Point, slope, direction: str, env: Envelope) -> bool:
    """Does the open ray from a point strictly above env ever meet it?

    The gap between the ray and the convex envelope is concave, so the ray
    meets the envelope iff the gap eventually decreases.
    """
    if direction == "right":
        return slope < env.edges[-1].a
    if direction == "left":
        return slope > env.edges[0].a
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
