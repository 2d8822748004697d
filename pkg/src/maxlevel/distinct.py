"""Maximum-level vertices for distinct (non-coinciding) lines."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .envelope import Case, Envelope, classify, ray_hits_envelope, upper_envelope, vertical_candidates
from .kernel import BoundViolated, EmptyInstance, Instance, Point, perturb
from .toplevels import TopKRegion, build_top_k_region


class DuplicateLines(ValueError):
    pass


def log_bound(c: int, n: int) -> int:
    """ceil(c * log2 n), computed exactly as the least k with 2^k >= n^c."""
    return (n ** c - 1).bit_length()


class ResultVertex(NamedTuple):
    point: Point
    degree: int
    level: int
    upper: int
    source: str   # "regular" or "vertical"


@dataclass
class MaxLevelResult:
    n: int
    max_level: Optional[int]
    k0: Optional[int]
    vertices: list
    case: Case
    mode: str = "distinct"
    search: Optional[str] = None
    timings: dict = field(default_factory=dict)
    reduction: object = None

    @property
    def points(self):
        return [v.point for v in self.vertices]


def detect_detached(region: TopKRegion, n: int):
    """(k0, vertices attaining it): the least count of copies through or above a fully seen vertex."""
    trusted = [v for v in region.vertices if v.trusted]
    if not trusted:
        raise BoundViolated(f"no fully seen vertex in the top-{region.k} region")
    k0 = min(v.detached_index for v in trusted)
    return k0, [v for v in trusted if v.detached_index == k0]


@dataclass
class CaseIIReduction:
    apex: Point
    apex_lines: tuple
    others: tuple        # ids of lines missing the apex
    d_minus: int
    d_plus: int
    d: int
    h: int
    d0: int
    kept: tuple          # ids of L0
    removed: tuple


def reduce_case_ii(lines, env: Envelope) -> CaseIIReduction:
    """Discard lines through the apex whose rays miss everything else on both far sides.

    Left rays are taken by increasing slope, right rays by decreasing slope;
    D-/D+ count how many in a row miss the envelope of the lines that avoid
    the apex.
    """
    n = len(lines)
    apex, through = env.vertices[0]
    on = set(through)
    rest = [l for l in lines if l.id not in on]
    if not rest:
        raise ValueError("every line passes through the apex; it is the only vertex")
    env_k = upper_envelope(rest)
    fan = sorted((l for l in lines if l.id in on), key=lambda l: (l.a, l.id))
    d_minus = 0
    for l in fan:
        if ray_hits_envelope(apex, l.a, "left", env_k):
            break
        d_minus += 1
    d_plus = 0
    for l in reversed(fan):
        if ray_hits_envelope(apex, l.a, "right", env_k):
            break
        d_plus += 1
    d = min(d_minus, d_plus)
    h = max(0, d - log_bound(2, n))
    left = [l.id for l in fan[:h]]
    right = [l.id for l in fan[len(fan) - h:]] if h else []
    if set(left) & set(right):
        raise BoundViolated("a line was selected for removal on both sides")
    removed = set(left) | set(right)
    kept = tuple(l.id for l in lines if l.id not in removed)
    return CaseIIReduction(apex, tuple(sorted(on)), tuple(l.id for l in rest), d_minus, d_plus,
                           d, h, d - h, kept, tuple(sorted(removed)))


def level_of_case_ii_vertex(level_in_kept: int, h: int) -> int:
    return level_in_kept + h


def _regular_case_i(lines):
    n = len(lines)
    k = min(log_bound(2, n), n - 1)
    region = build_top_k_region(perturb(Instance(lines)), k)
    k0, best = detect_detached(region, n)
    return [ResultVertex(v.point, v.degree, n - k0, v.upper, "regular") for v in best]


def _regular_case_ii(lines, env):
    n = len(lines)
    apex, through = env.vertices[0]
    if len(through) == n:
        return [ResultVertex(apex, n, 0, 0, "regular")], None
    red = reduce_case_ii(lines, env)
    apex_level = n - len(red.apex_lines)
    kept_ids = set(red.kept)
    kept = [l for l in lines if l.id in kept_ids]
    m = len(kept)
    k = min(log_bound(4, n), m - 1)
    region = build_top_k_region(perturb(Instance(kept)), k)
    found = [v for v in region.vertices if v.trusted and v.point != apex]
    out = []
    if found:
        k0 = min(v.detached_index for v in found)
        level = level_of_case_ii_vertex(m - k0, red.h)
        out = [ResultVertex(v.point, v.degree, level, v.upper + red.h, "regular")
               for v in found if v.detached_index == k0]
    apex_vertex = ResultVertex(apex, len(red.apex_lines), apex_level, 0, "regular")
    if not out or apex_level > out[0].level:
        return [apex_vertex], red
    if apex_level == out[0].level:
        out.append(apex_vertex)
    return out, red


def merge_vertical(regular, candidates) -> list:
    """Combine regular winners with the topmost points on vertical lines."""
    pool = {v.point: v for v in regular}
    for c in candidates:
        if c.point not in pool:
            pool[c.point] = ResultVertex(c.point, len(c.lines), c.level, 0, "vertical")
    if not pool:
        return []
    best = max(v.level for v in pool.values())
    return sorted((v for v in pool.values() if v.level == best), key=lambda v: v.point)


def finish(n, regular, verticals, lines, mult, env, case, **kw) -> MaxLevelResult:
    cands = vertical_candidates(verticals, lines, mult, env) if lines else []
    vertices = merge_vertical(regular, cands)
    if not vertices:
        return MaxLevelResult(n, None, None, [], case, **kw)
    level = vertices[0].level
    k0 = n - level if any(v.source == "regular" for v in vertices) else None
    return MaxLevelResult(n, level, k0, vertices, case, **kw)


def solve_distinct(instance: Instance) -> MaxLevelResult:
    """All maximum-level vertices of an arrangement of distinct lines."""
    if not instance.lines and not instance.verticals:
        raise EmptyInstance("no lines")
    if instance.has_duplicates():
        raise DuplicateLines("duplicates require coincide mode")
    t0 = time.perf_counter()
    lines = list(instance.lines)
    n = len(lines)
    if not lines:
        return MaxLevelResult(0, None, None, [], Case.NO_VERTEX)
    env = upper_envelope(lines)
    case = classify(env)
    t1 = time.perf_counter()
    red = None
    if case is Case.I:
        regular = _regular_case_i(lines)
    elif case is Case.II:
        regular, red = _regular_case_ii(lines, env)
    else:
        regular = []
    t2 = time.perf_counter()
    res = finish(n, regular, instance.verticals, lines, {}, env, case, reduction=red)
    res.timings = {"envelope": (t1 - t0) * 1e3, "region": (t2 - t1) * 1e3,
                   "merge": (time.perf_counter() - t2) * 1e3}
    return res
