"""Maximum-level vertices when lines may coincide.

The lines are collapsed to distinct lines with multiplicities.  For a level
k we build pi_k (the k-th upper level of the multiset arrangement) and the
portions of distinct lines strictly above it; the least k for which two of
those portions cross in their interiors is k0, and the crossings at the
bottom of that family are the answer.
"""
from __future__ import annotations

import time
from bisect import insort
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .distinct import MaxLevelResult, ResultVertex, finish
from .envelope import Case, classify, upper_envelope
from .kernel import EmptyInstance, Instance, InvariantError, Line, Point, perturb
from .toplevels import LevelChain, deperturb_chain, trace_level_naive


@dataclass
class DedupView:
    gamma: list     # distinct lines, each carrying the id of its first input copy
    mu: dict        # gamma id -> multiplicity
    f: list         # input copy (in order) -> gamma id
    handles: list   # perturbed copies; handle.line is the gamma id

    @property
    def n(self):
        return len(self.handles)

    @property
    def by_id(self):
        return {g.id: g for g in self.gamma}

    @property
    def F(self):
        return {h.idx: h.line for h in self.handles}


def dedup(instance: Instance) -> DedupView:
    rep, gamma, mu, f = {}, [], {}, []
    for l in instance.lines:
        if l.key not in rep:
            rep[l.key] = l.id
            gamma.append(l)
        g = rep[l.key]
        m = instance.mu(l.id)
        mu[g] = mu.get(g, 0) + m
        f.extend([g] * m)
    return DedupView(gamma, mu, f, perturb(instance))


def weighted_above(view: DedupView, p: Point) -> int:
    return sum(view.mu[g.id] for g in view.gamma if g.a * p.x + g.b > p.y)


def upper_membership(view: DedupView, line_id: int, interval, k: int) -> bool:
    """Does the edge of a distinct line over the open x-interval (None = unbounded) lie on upper level k?"""
    lo, hi = interval
    if lo is None and hi is None:
        x = 0
    elif lo is None:
        x = hi - 1
    elif hi is None:
        x = lo + 1
    else:
        x = (lo + hi) / 2
    g = view.by_id[line_id]
    u = weighted_above(view, Point(x, g.at(x)))
    return u <= k < u + view.mu[line_id]


def build_pi_k(view: DedupView, k: int) -> LevelChain:
    return deperturb_chain(trace_level_naive(view.handles, k), view.by_id)


def arrangement_extent(gamma):
    """x of the leftmost and rightmost vertex of the arrangement, or None if there is none."""
    xs = []
    for order in (sorted(gamma, key=lambda l: (l.a, -l.b)), sorted(gamma, key=lambda l: (-l.a, -l.b))):
        for g, h in zip(order, order[1:]):
            if g.a != h.a:
                xs.append((h.b - g.b) / (g.a - h.a))
    if not xs:
        return None
    return min(xs), max(xs)


class Segment(NamedTuple):
    left: Point
    right: Point
    line: Line


@dataclass
class SegmentSet:
    segments: list
    pending: dict = field(default_factory=dict)   # gamma id -> open left endpoint, None when closed


def build_delta_k(pi: LevelChain, view: DedupView, extent=None) -> SegmentSet:
    """Maximal pieces of distinct lines strictly above pi_k, cut by verticals beyond every vertex."""
    extent = extent or arrangement_extent(view.gamma)
    if extent is None:
        raise ValueError("the arrangement has no vertex")
    xl, xr = extent[0] - 1, extent[1] + 1
    W = {g.id: None for g in view.gamma}
    segs = []
    yl = pi.y_at(xl)
    for g in view.gamma:
        if g.at(xl) > yl:
            W[g.id] = Point(xl, g.at(xl))
    for i, v in enumerate(pi.vertices):
        p = v.point
        left, right = pi.edges[i], pi.edges[i + 1]
        for g in view.gamma:
            if g.a * p.x + g.b != p.y:
                continue
            if g.a < left.a and W[g.id] is not None:
                segs.append(Segment(W[g.id], p, g))
                W[g.id] = None
            if g.a > right.a and W[g.id] is None:
                W[g.id] = p
    for g in view.gamma:
        if W[g.id] is not None:
            segs.append(Segment(W[g.id], Point(xr, g.at(xr)), g))
    return SegmentSet(segs, W)


def _cross_inside(s: Segment, t: Segment):
    g, h = s.line, t.line
    if g.a == h.a:
        return None
    x = (h.b - g.b) / (g.a - h.a)
    if max(s.left.x, t.left.x) < x < min(s.right.x, t.right.x):
        return x
    return None


def has_detached(delta: SegmentSet) -> bool:
    """Do two pieces cross at a point interior to both?  Left-to-right sweep over endpoints."""
    segs = delta.segments
    if len(segs) < 2:
        return False
    events = {}
    for i, s in enumerate(segs):
        events.setdefault(s.left.x, ([], []))[1].append(i)
        events.setdefault(s.right.x, ([], []))[0].append(i)
    status = []
    for x in sorted(events):
        ends, starts = events[x]
        for i in ends:
            j = status.index(i)
            del status[j]
            if 0 < j < len(status) and _cross_inside(segs[status[j - 1]], segs[status[j]]) is not None:
                return True
        key = lambda i: (segs[i].line.at(x), segs[i].line.a)
        for i in sorted(starts, key=key):
            insort(status, i, key=key)
            j = status.index(i)
            for o in (j - 1, j + 1):
                if 0 <= o < len(status) and _cross_inside(segs[i], segs[status[o]]) is not None:
                    return True
    return False


def _envelope_of(segs):
    if len(segs) == 1:
        s = segs[0]
        return [(s.left.x, s.right.x, s)]
    mid = len(segs) // 2
    return _merge(_envelope_of(segs[:mid]), _envelope_of(segs[mid:]))


def _merge(A, B):
    xs = sorted({x for p in A + B for x in p[:2]})
    out = []
    ia = ib = 0
    for x0, x1 in zip(xs, xs[1:]):
        while ia < len(A) and A[ia][1] <= x0:
            ia += 1
        while ib < len(B) and B[ib][1] <= x0:
            ib += 1
        pa = A[ia][2] if ia < len(A) and A[ia][0] <= x0 else None
        pb = B[ib][2] if ib < len(B) and B[ib][0] <= x0 else None
        if pa is None and pb is None:
            continue
        if pa is None or pb is None:
            out.append([x0, x1, pa or pb])
            continue
        xm = (x0 + x1) / 2
        lo, hi = (pa, pb) if pa.line.at(xm) <= pb.line.at(xm) else (pb, pa)
        xc = _cross_inside(Segment(Point(x0, 0), Point(x1, 0), lo.line), Segment(Point(x0, 0), Point(x1, 0), hi.line))
        if xc is None:
            out.append([x0, x1, lo])
        else:
            first = lo if lo.line.at(x0) < hi.line.at(x0) else hi
            second = hi if first is lo else lo
            out.append([x0, xc, first])
            out.append([xc, x1, second])
    merged = []
    for p in out:
        if merged and merged[-1][2] is p[2] and merged[-1][1] == p[0]:
            merged[-1][1] = p[1]
        else:
            merged.append(p)
    return [tuple(p) for p in merged]


def lower_envelope_vertices(segments) -> list:
    """Points where the lower envelope of the segments switches between two of them at interior points."""
    if not segments:
        return []
    env = _envelope_of(list(segments))
    out = []
    for (a0, a1, s), (b0, b1, t) in zip(env, env[1:]):
        if a1 != b0 or s is t or s.line.id == t.line.id:
            continue
        x = a1
        y = s.line.at(x)
        if t.line.at(x) != y:
            continue
        if s.left.x < x < s.right.x and t.left.x < x < t.right.x:
            out.append(Point(x, y))
    return sorted(set(out))


def search_k0(test, n: int, strategy: str = "binary") -> Optional[int]:
    """Least k in [0, n-1] with test(k) true (None if there is none); test must be monotone."""
    seen = {}

    def probe(k):
        if k not in seen:
            seen[k] = test(k)
        return seen[k]

    if strategy == "binary":
        lo, hi = 0, n - 1
        if not probe(hi):
            return None
    elif strategy == "exponential":
        lo, step = 0, 1
        while True:
            k = min(step, n - 1)
            if probe(k):
                hi = k
                break
            if k == n - 1:
                return None
            lo, step = k + 1, step * 2
    else:
        raise ValueError(f"unknown search strategy {strategy!r}")
    while lo < hi:
        mid = (lo + hi) // 2
        if probe(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def solve_coincide(instance: Instance, strategy: str = "binary") -> MaxLevelResult:
    """All maximum-level vertices; coinciding lines count with their multiplicity."""
    if not instance.lines and not instance.verticals:
        raise EmptyInstance("no lines")
    t0 = time.perf_counter()
    view = dedup(instance)
    n = view.n
    kw = {"mode": "coincide", "search": strategy}
    if not view.gamma:
        return MaxLevelResult(0, None, None, [], Case.NO_VERTEX, **kw)
    env = upper_envelope(view.gamma)
    case = classify(env)
    extent = arrangement_extent(view.gamma)
    regular = []
    timings = {}
    if extent is not None:
        deltas = {}

        def test(k):
            deltas[k] = build_delta_k(build_pi_k(view, k), view, extent)
            return has_detached(deltas[k])

        k0 = search_k0(test, n, strategy)
        t1 = time.perf_counter()
        timings["search"] = (t1 - t0) * 1e3
        if k0 is None:
            p = _single_vertex(view.gamma)
            regular = [ResultVertex(p, len(view.gamma), 0, 0, "regular")]
        else:
            for p in lower_envelope_vertices(deltas[k0].segments):
                above = weighted_above(view, p)
                on = [g for g in view.gamma if g.at(p.x) == p.y]
                level = n - above - sum(view.mu[g.id] for g in on)
                if level != n - k0:
                    raise InvariantError(f"vertex {p} has level {level}, expected {n - k0}")
                regular.append(ResultVertex(p, len(on), level, above, "regular"))
            if not regular:
                raise InvariantError(f"no vertex found on the lower envelope at k0={k0}")
        timings["envelope"] = (time.perf_counter() - t1) * 1e3
    res = finish(n, regular, instance.verticals, view.gamma, view.mu, env, case, **kw)
    res.timings = timings
    return res


def _single_vertex(gamma) -> Point:
    g = gamma[0]
    h = next(l for l in gamma if l.a != g.a)
    x = (h.b - g.b) / (g.a - h.a)
    p = Point(x, g.at(x))
    if any(l.at(x) != p.y for l in gamma):
        raise InvariantError("no detached vertex at any level, yet the lines are not concurrent")
    return p
