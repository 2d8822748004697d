"""Brute-force oracle, instance generators and weighted k-level statistics.

The oracle only uses pairwise intersections and weighted below-counts; it
shares nothing with the solvers beyond the Instance type.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .kernel import EmptyInstance, BadK, Instance, Line, Point, VerticalLine, mpq


class OracleVertex(NamedTuple):
    point: Point
    level: int
    degree: int


@dataclass
class OracleResult:
    max_level: Optional[int]
    vertices: list                                         # OracleVertex at the max level, sorted
    all_vertex_levels: dict = field(default_factory=dict)  # Point -> level
    degrees: dict = field(default_factory=dict)            # Point -> distinct non-vertical lines through it
    n: int = 0

    @property
    def points(self):
        return [v.point for v in self.vertices]


def _distinct(instance):
    weight = {}
    for l in instance.lines:
        key = (l.a, l.b)
        weight[key] = weight.get(key, 0) + instance.multiplicities.get(l.id, 1)
    return [(a, b, w) for (a, b), w in weight.items()]


def brute_force(instance: Instance) -> OracleResult:
    """Every vertex with its weighted strictly-below count, by sweeping each line."""
    if not instance.lines and not instance.verticals:
        raise EmptyInstance("no lines")
    lines = _distinct(instance)
    n = sum(w for _, _, w in lines)
    levels, degrees = {}, {}

    def note(p, lev, deg):
        old = levels.get(p)
        if old is not None and old != lev:
            raise AssertionError(f"oracle disagrees with itself at {p}: {old} vs {lev}")
        levels[p] = lev
        degrees[p] = deg

    for i, (ai, bi, wi) in enumerate(lines):
        below = 0
        crossings = []
        for j, (aj, bj, wj) in enumerate(lines):
            if j == i:
                continue
            if aj == ai:
                if bj < bi:
                    below += wj
                continue
            if aj > ai:
                below += wj   # steeper lines are lower far to the left
            crossings.append(((bj - bi) / (ai - aj), aj, wj))
        crossings.sort(key=lambda c: c[0])
        s = 0
        while s < len(crossings):
            x = crossings[s][0]
            e = s
            rising = falling = 0
            while e < len(crossings) and crossings[e][0] == x:
                if crossings[e][1] > ai:
                    rising += crossings[e][2]
                else:
                    falling += crossings[e][2]
                e += 1
            note(Point(x, ai * x + bi), below - rising, 1 + e - s)
            below += falling - rising
            s = e

    if lines:
        for x0 in sorted({v.x0 for v in instance.verticals}):
            ys = [(a * x0 + b, w) for a, b, w in lines]
            top = max(y for y, _ in ys)
            through = [w for y, w in ys if y == top]
            note(Point(x0, top), n - sum(through), len(through))

    if not levels:
        return OracleResult(None, [], {}, {}, n)
    best = max(levels.values())
    top = [OracleVertex(p, best, degrees[p]) for p in sorted(levels) if levels[p] == best]
    return OracleResult(best, top, levels, degrees, n)


def upper_count(instance: Instance, p: Point) -> int:
    """Weighted number of non-vertical lines strictly above p."""
    return sum(instance.multiplicities.get(l.id, 1) for l in instance.lines if l.a * p.x + l.b > p.y)


def through_ids(instance: Instance, p: Point) -> list:
    return [l.id for l in instance.lines if l.a * p.x + l.b == p.y]


# ---------------------------------------------------------------- generators

@dataclass
class LowerBoundExpectation:
    t: int
    n: int
    max_level: int
    max_points: list     # odd-index parabola points and their mirrors
    corner: Point        # p_m
    corner_level: int
    center_level: int    # level of p_0


def _parabola(i: int) -> Point:
    if i == 0:
        return Point(mpq(0), mpq(0))
    x = mpq(3) ** (abs(i) - 1)
    return Point(x if i > 0 else -x, x * x)


def _chord(p: Point, q: Point):
    a = (q.y - p.y) / (q.x - p.x)
    return a, p.y - a * p.x


def gen_lower_bound(t: int):
    """Dyadic chords over parabola points plus steep lines at both ends.

    Returns (instance, expectation).  Points p_i = (3^(i-1), 9^(i-1)) for
    i = 1..m with m = 2^t, p_0 = origin and mirrors p_-i.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    m = 2 ** t
    pairs = []
    for j in range(t + 1):
        step = 2 ** (t - j)
        for r in range(1, 2 ** j + 1):
            for sign in (1, -1):
                pairs.append(_chord(_parabola(sign * (r - 1) * step), _parabola(sign * r * step)))
    pm = _parabola(m)
    s = 2 * pm.x
    for sign in (1, -1):
        p = Point(sign * pm.x, pm.y)
        for c in (2, 4):
            a = sign * c * s
            pairs.append((a, p.y - a * p.x))
    inst = Instance.from_pairs(pairs)
    n = len(pairs)
    odd = [_parabola(u) for u in range(-(m - 1), m, 2)]
    exp = LowerBoundExpectation(t, n, n - t - 2, sorted(odd), pm, n - t - 3, n - 2 * t - 2)
    return inst, exp


def _small_rational(rng, span, den=4):
    return mpq(rng.randint(-span, span), rng.randint(1, den))


def gen_random(n: int, seed: int, concurrency: float = 0.0, parallel: float = 0.0,
               duplicate: float = 0.0, vertical: float = 0.0, span: Optional[int] = None) -> Instance:
    """Reproducible random instance with controllable degeneracies.

    With every bias at zero the lines are in general position (checked,
    not just likely).  ``concurrency`` is the chance a line passes through
    one of a few shared points; at 1.0 there is a single shared point.
    ``parallel`` reuses an earlier slope, ``duplicate`` repeats an earlier
    line (raising its multiplicity or adding a second copy), ``vertical``
    adds a vertical line instead.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    span = span or max(8, n)
    hubs = [Point(_small_rational(rng, span // 2 + 1), _small_rational(rng, span // 2 + 1))
            for _ in range(1 + int((1 - concurrency) * n / 4))]
    general = not (concurrency or parallel or duplicate or vertical)
    lines, verticals, mult = [], [], {}
    keys, slopes, points = set(), [], set()
    total = 0
    next_id = 1
    while total < n:
        r = rng.random()
        if vertical and r < vertical:
            x0 = rng.choice(hubs).x if rng.random() < 0.5 else _small_rational(rng, span)
            verticals.append(VerticalLine(next_id, x0))
            next_id += 1
            total += 1
            continue
        if lines and duplicate and rng.random() < duplicate:
            src = rng.choice(lines)
            if rng.random() < 0.5:
                mult[src.id] = mult.get(src.id, 1) + 1
            else:
                lines.append(Line(next_id, src.a, src.b))
                next_id += 1
            total += 1
            continue
        for _ in range(1000):
            if slopes and parallel and rng.random() < parallel:
                a = rng.choice(slopes)
            else:
                a = _small_rational(rng, span)
            if concurrency and rng.random() < concurrency:
                h = rng.choice(hubs)
                b = h.y - a * h.x
            else:
                b = _small_rational(rng, span * 2)
            if (a, b) in keys:
                continue
            if general:
                if a in slopes:
                    continue
                pts = [Point((l.b - b) / (a - l.a), a * (l.b - b) / (a - l.a) + b) for l in lines]
                if any(p in points for p in pts) or len(set(pts)) < len(pts):
                    continue
                points.update(pts)
            break
        else:
            raise RuntimeError("could not place a new line; increase span")
        keys.add((a, b))
        slopes.append(a)
        lines.append(Line(next_id, a, b))
        next_id += 1
        total += 1
    return Instance(lines, mult, verticals)


# ---------------------------------------------------------------- weighted statistics

@dataclass
class WeightedStats:
    k: int
    vertex_count: int
    weight: int   # sum of vertex degrees along the level
    n: int


def weighted_level_stats(instance: Instance, k: int) -> WeightedStats:
    """Vertices and degree sum of the (lower) k-level, via the upper machinery on the mirror image."""
    from .toplevels import upper_level

    if instance.has_duplicates():
        raise ValueError("weighted statistics are defined for distinct lines")
    n = len(instance.lines)
    if not 0 <= k < n:
        raise BadK(f"k={k} outside [0, {n - 1}]")
    mirror = Instance([Line(l.id, -l.a, -l.b) for l in instance.lines], {}, [])
    chain = upper_level(mirror, k)
    omega = 0
    for v in chain.vertices:
        p = Point(v.point.x, -v.point.y)
        omega += sum(1 for l in instance.lines if l.a * p.x + l.b == p.y)
    return WeightedStats(k, len(chain.vertices), omega, n)


def gen_apex(n: int, seed: int, fan: float = 0.6, spread: int = 3, concurrency: float = 0.3) -> Instance:
    """An envelope with a single vertex: a fan of lines through one point plus lines under it.

    ``fan`` is the share of lines through the apex.  The other lines take
    slopes inside the middle 1/spread of the fan's slope range, so with a
    large spread many fan rays miss them on both sides.
    """
    if n < 3:
        raise ValueError("need at least three lines")
    rng = random.Random(seed)
    apex = Point(_small_rational(rng, 5), _small_rational(rng, 5))
    m = max(2, min(n - 1, round(fan * n)))
    slopes = set()
    while len(slopes) < m:
        slopes.add(_small_rational(rng, 4 * n))
    slopes = sorted(slopes)
    lines = [Line(i, a, apex.y - a * apex.x) for i, a in enumerate(slopes, 1)]
    lo, hi = slopes[0], slopes[-1]
    width = (hi - lo) / spread
    mid = (lo + hi) / 2
    hubs = [Point(apex.x + _small_rational(rng, 6), apex.y - rng.randint(1, 12)) for _ in range(2)]
    keys = {l.key for l in lines}
    while len(lines) < n:
        a = mid + width * mpq(rng.randint(-60, 60), 120)
        if rng.random() < concurrency:
            h = rng.choice(hubs)
            b = h.y - a * h.x
            if a * apex.x + b >= apex.y:
                continue
        else:
            b = apex.y - a * apex.x - mpq(rng.randint(1, 40), rng.randint(1, 3))
        if (a, b) in keys:
            continue
        keys.add((a, b))
        lines.append(Line(len(lines) + 1, a, b))
    return Instance(lines, {}, [])
