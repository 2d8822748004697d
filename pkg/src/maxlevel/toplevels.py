"""Top levels of a perturbed arrangement.

Peeling into convex layers, tracing the k-th upper level (level k has k
copies strictly above it), the region of the arrangement on or above that
level with per-vertex upper counts, and mapping perturbed chains back to the
unperturbed lines.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .kernel import (
    BadK, InvariantError, Point, above_after, cmp_perturbed, cross_main,
    order_key, perturb, perturbed_intersection_x,
)


@dataclass
class PeelDecomposition:
    layers: list      # each a list of handles sorted by slope (envelope order)
    remaining: int    # handles left after the last layer
    n: int

    @property
    def handles(self):
        return [h for layer in self.layers for h in layer]


def _shows(l1, l2, l3) -> bool:
    m12, m23 = cross_main(l1, l2), cross_main(l2, l3)
    if m12 != m23:
        return m12 < m23
    return cmp_perturbed(perturbed_intersection_x(l1, l2), perturbed_intersection_x(l2, l3)) < 0


def _hull(sorted_handles) -> list:
    hull = []
    prev = None
    for h in sorted_handles:
        if h.a == prev:
            continue
        prev = h.a
        while len(hull) >= 2 and not _shows(hull[-2], hull[-1], h):
            hull.pop()
        hull.append(h)
    return hull


def peel(handles, k: int) -> PeelDecomposition:
    """Strip k successive upper envelopes (fewer if the copies run out)."""
    if k < 1:
        raise BadK(f"need at least one layer, got k={k}")
    rest = sorted(handles, key=order_key)
    layers = []
    while rest and len(layers) < k:
        layer = _hull(rest)
        taken = {h.idx for h in layer}
        rest = [h for h in rest if h.idx not in taken]
        layers.append(layer)
    return PeelDecomposition(layers, len(rest), len(handles))


class PerturbedChain(NamedTuple):
    handles: list   # supporting copy of each edge, left to right
    breaks: list    # PerturbedX between consecutive edges


def _nearest(cur, x, cands):
    best = best_main = best_x = None
    for m in cands:
        if m.a == cur.a:
            continue
        mm = cross_main(cur, m)
        if x is not None and mm < x.main:
            continue
        if best is not None and mm > best_main:
            continue
        X = perturbed_intersection_x(cur, m)
        if x is not None and cmp_perturbed(X, x) <= 0:
            continue
        if best is None or cmp_perturbed(X, best_x) < 0:
            best, best_main, best_x = m, mm, X
    return best, best_x


def trace_level_naive(handles, k: int) -> PerturbedChain:
    """Walk level k by checking every copy at each step."""
    if not 0 <= k < len(handles):
        raise BadK(f"k={k} outside [0, {len(handles) - 1}]")
    cur = sorted(handles, key=order_key)[k]
    x = None
    out, breaks = [cur], []
    while True:
        nxt, x = _nearest(cur, x, handles)
        if nxt is None:
            return PerturbedChain(out, breaks)
        out.append(nxt)
        breaks.append(x)
        cur = nxt


def trace_kth_upper_level(decomp: PeelDecomposition, k: int) -> PerturbedChain:
    """Walk level k using only the first k+1 convex layers.

    For each layer we keep the contiguous run of its lines lying above the
    walking point; the next crossing inside that layer can only involve the
    ends of the run or their outer neighbours.  When the point is above the
    whole layer, the first line it meets is found by binary search along the
    layer's envelope.
    """
    if not 0 <= k < decomp.n:
        raise BadK(f"k={k} outside [0, {decomp.n - 1}]")
    if len(decomp.layers) < k + 1 and decomp.remaining:
        raise BadK(f"level {k} needs {k + 1} layers, decomposition has {len(decomp.layers)}")
    layers = decomp.layers
    loc = {}
    for j, layer in enumerate(layers):
        for t, h in enumerate(layer):
            loc[h.idx] = (j, t)

    state = {"cur": sorted(decomp.handles, key=order_key)[k], "x": None}

    def view(j):
        layer = layers[j]
        jj, e = loc[state["cur"].idx]
        if jj != j:
            e = -1
        size = len(layer) - (e >= 0)
        if e < 0:
            return layer.__getitem__, size, e
        return (lambda r: layer[r if r < e else r + 1]), size, e

    def peak(at, size):
        x = state["x"]
        lo, hi = 0, size - 1
        while lo < hi:
            mid = (lo + hi) // 2
            a, b = at(mid), at(mid + 1)
            if x is None or _after(a, b, x):
                hi = mid
            else:
                lo = mid + 1
        return lo

    def run_above(j):
        at, size, e = view(j)
        if size == 0:
            return None
        cur, x = state["cur"], state["x"]
        p = peak(at, size)
        if not above_after(at(p), cur, x):
            return None
        lo, hi = 0, p
        while lo < hi:
            mid = (lo + hi) // 2
            if above_after(at(mid), cur, x):
                hi = mid
            else:
                lo = mid + 1
        left = lo
        lo, hi = p, size - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if above_after(at(mid), cur, x):
                lo = mid
            else:
                hi = mid - 1
        return loc[at(left).idx][1], loc[at(lo).idx][1]

    def candidates(j, run):
        layer = layers[j]
        if run is not None:
            _, _, e = view(j)
            lo, hi = run
            out = [layer[lo], layer[hi]]
            t = lo - 1 if lo - 1 != e else lo - 2
            if t >= 0:
                out.append(layer[t])
            t = hi + 1 if hi + 1 != e else hi + 2
            if t < len(layer):
                out.append(layer[t])
            return out
        at, size, e = view(j)
        if size == 0:
            return []
        cur = state["cur"]
        lo, hi = peak(at, size), size - 1
        while lo < hi:
            mid = (lo + hi) // 2
            g, h = at(mid), at(mid + 1)
            if above_after(cur, g, perturbed_intersection_x(g, h)):
                lo = mid + 1
            else:
                hi = mid
        return [at(lo)]

    runs = [run_above(j) for j in range(len(layers))]
    out, breaks = [state["cur"]], []
    while True:
        cands = []
        for j, run in enumerate(runs):
            cands.extend(candidates(j, run))
        nxt, X = _nearest(state["cur"], state["x"], cands)
        if nxt is None:
            return PerturbedChain(out, breaks)
        old = loc[state["cur"].idx][0]
        state["cur"], state["x"] = nxt, X
        out.append(nxt)
        breaks.append(X)
        runs[old] = run_above(old)
        new = loc[nxt.idx][0]
        if new != old:
            runs[new] = run_above(new)


def _after(a, b, x) -> bool:
    m = cross_main(a, b)
    if m != x.main:
        return m > x.main
    return cmp_perturbed(perturbed_intersection_x(a, b), x) > 0


class ChainVertex(NamedTuple):
    point: Point
    lines: tuple   # distinct lines met there by the walk
    turns: bool


@dataclass
class LevelChain:
    """Unperturbed level: edges[i] lies between vertices[i-1] and vertices[i]."""
    edges: list
    vertices: list

    def sample_points(self):
        """One point in the relative interior of every edge."""
        xs = [v.point.x for v in self.vertices]
        pts = []
        for i, line in enumerate(self.edges):
            if not xs:
                x = 0
            elif i == 0:
                x = xs[0] - 1
            elif i == len(xs):
                x = xs[-1] + 1
            else:
                x = (xs[i - 1] + xs[i]) / 2
            pts.append((line, Point(x, line.at(x))))
        return pts

    def y_at(self, x):
        for i, v in enumerate(self.vertices):
            if x <= v.point.x:
                return self.edges[i].at(x)
        return self.edges[-1].at(x)


def deperturb_chain(chain: PerturbedChain, lines: dict) -> LevelChain:
    """Drop infinitesimal edges and map the rest to unperturbed lines.

    ``lines`` maps the ``line`` field of each handle to its Line.  Every
    cluster of infinitesimal edges becomes one vertex; it turns when the
    line before and after differ.
    """
    hs, bs = chain.handles, chain.breaks
    edges = [lines[hs[0].line]]
    vertices = []
    met = set()
    for t in range(1, len(hs)):
        met.add(hs[t - 1].line)
        met.add(hs[t].line)
        if t < len(bs) and bs[t - 1].main == bs[t].main:
            continue
        g = edges[-1]
        f = lines[hs[t].line]
        x = bs[t - 1].main
        p = Point(x, g.at(x))
        if f.at(x) != p.y:
            raise InvariantError(f"chain pieces {g.id} and {f.id} do not meet at x={x}")
        vertices.append(ChainVertex(p, tuple(sorted(met)), f.id != g.id))
        edges.append(f)
        met = set()
    return LevelChain(edges, vertices)


class RegionVertex(NamedTuple):
    point: Point
    lines: tuple    # distinct lines seen through the point
    upper: int      # copies strictly above
    degree: int     # distinct lines seen
    weight: int     # copies seen
    trusted: bool   # every copy through the point was seen

    @property
    def detached_index(self):
        return self.upper + self.weight


@dataclass
class TopKRegion:
    k: int
    vertices: list   # RegionVertex sorted by point
    chain: PerturbedChain


def build_top_k_region(handles, k: int, decomp: Optional[PeelDecomposition] = None) -> TopKRegion:
    """All vertices with at most k copies strictly above.

    A kinetic sweep keeps the top k+1 copies in vertical order: neighbours
    that are about to cross are queued as swap events, and the traced
    level-k chain tells when the bottom slot is taken over from below.
    Every swap at slot p < k, and every takeover at slot k, is a vertex of
    the perturbed arrangement with exactly that many copies above.
    """
    if not 0 <= k < len(handles):
        raise BadK(f"k={k} outside [0, {len(handles) - 1}]")
    decomp = decomp or peel(handles, k + 1)
    chain = trace_kth_upper_level(decomp, k)
    status = sorted(decomp.handles, key=order_key)[:k + 1]
    pos = {h.idx: p for p, h in enumerate(status)}
    heap = []

    def push(p):
        if p < 0 or p + 1 >= len(status):
            return
        top, bot = status[p], status[p + 1]
        if top.a < bot.a:
            X = perturbed_intersection_x(top, bot)
            heapq.heappush(heap, (X.main, X, top.idx, bot.idx))

    for p in range(len(status) - 1):
        push(p)
    takeovers = list(zip(chain.breaks, chain.handles[1:]))
    records = []
    ci = 0
    while heap or ci < len(takeovers):
        if heap and (ci == len(takeovers) or cmp_perturbed(heap[0][1], takeovers[ci][0]) <= 0):
            main, X, i, j = heapq.heappop(heap)
            p = pos.get(i)
            if p is None or pos.get(j) != p + 1:
                continue
            top, bot = status[p], status[p + 1]
            status[p], status[p + 1] = bot, top
            pos[i], pos[j] = p + 1, p
            records.append((main, top, bot, p))
            push(p - 1)
            push(p + 1)
        else:
            X, h = takeovers[ci]
            ci += 1
            if pos.get(h.idx) == k:
                continue
            if h.idx in pos:
                raise InvariantError(f"copy {h.idx} reaches level {k} from slot {pos[h.idx]}")
            old = status[k]
            del pos[old.idx]
            status[k] = h
            pos[h.idx] = k
            records.append((X.main, old, h, k))
            push(k - 1)

    groups = {}
    for x, g, h, u in records:
        p = Point(x, g.a * x + g.b)
        acc = groups.get(p)
        if acc is None:
            groups[p] = [u, {g.line, h.line}, {g.idx, h.idx}]
        else:
            acc[0] = min(acc[0], u)
            acc[1].update((g.line, h.line))
            acc[2].update((g.idx, h.idx))
    vertices = []
    for p in sorted(groups):
        u, ids, copies = groups[p]
        w = len(copies)
        # slots u .. u+j of a cluster involve at least j+2 of its copies, so a
        # cluster with copies still unseen shows at least k-u+2 of them
        vertices.append(RegionVertex(p, tuple(sorted(ids)), u, len(ids), w, u + w <= k + 1))
    return TopKRegion(k, vertices, chain)


def upper_level(instance, k: int, naive: bool = False) -> LevelChain:
    """The unperturbed k-th upper level of an instance (multiplicities respected)."""
    handles = perturb(instance)
    if naive:
        chain = trace_level_naive(handles, k)
    else:
        if not 0 <= k < len(handles):
            raise BadK(f"k={k} outside [0, {len(handles) - 1}]")
        chain = trace_kth_upper_level(peel(handles, k + 1), k)
    return deperturb_chain(chain, {l.id: l for l in instance.lines})
