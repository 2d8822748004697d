import random
from itertools import combinations

import hypothesis as hyp
import hypothesis.strategies as hys
import pytest

from maxlevel.distinct import solve_distinct
from maxlevel.kernel import BadK, EmptyInstance, Instance, Point, VerticalLine, mpq
from maxlevel.testbed import (
    brute_force, gen_apex, gen_lower_bound, gen_random, upper_count, weighted_level_stats,
)

from cases import TRIANGLE


def test_oracle_examples():
    o = brute_force(TRIANGLE)
    assert o.max_level == 1 and o.points == [Point(-1, 1), Point(1, 1)]
    o = brute_force(Instance.from_pairs([(1, 0), (-1, 0)], mult={1: 2}))
    assert o.max_level == 0 and o.points == [Point(0, 0)]
    assert o.vertices[0].degree == 2
    with pytest.raises(EmptyInstance):
        brute_force(Instance())


def test_oracle_lower_bound_t3():
    inst, exp = gen_lower_bound(3)
    assert len(inst.lines) == 34 and brute_force(inst).max_level == 29 == exp.max_level


def test_oracle_vertical_topmost():
    inst = Instance(list(TRIANGLE.lines), {}, [VerticalLine(4, mpq(3))])
    o = brute_force(inst)
    assert o.all_vertex_levels[Point(3, 3)] == 2


def test_oracle_levels_by_direct_count():
    inst = gen_random(15, 2, concurrency=0.5, duplicate=0.3)
    n = inst.n_lines
    o = brute_force(inst)
    for p, lev in o.all_vertex_levels.items():
        below = sum(inst.mu(l.id) for l in inst.lines if l.at(p.x) < p.y)
        assert lev == below
        assert lev + upper_count(inst, p) + sum(inst.mu(l.id) for l in inst.lines if l.at(p.x) == p.y) == n


@pytest.mark.parametrize("seed", range(10))
def test_oracle_ignores_order(seed):
    inst = gen_random(20, seed, concurrency=0.6, parallel=0.3, duplicate=0.2, vertical=0.1)
    lines = list(inst.lines)
    random.Random(seed).shuffle(lines)
    o, s = brute_force(inst), brute_force(Instance(lines, inst.multiplicities, inst.verticals[::-1]))
    assert (o.max_level, o.points, o.all_vertex_levels) == (s.max_level, s.points, s.all_vertex_levels)


@pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
def test_lower_bound_construction(t):
    inst, exp = gen_lower_bound(t)
    n = len(inst.lines)
    assert n == 2 ** (t + 2) + 2 == exp.n
    m = 2 ** t
    xmax = mpq(3) ** (m - 1)
    pts = {Point(s * mpq(3) ** (i - 1), mpq(9) ** (i - 1)) for i in range(1, m + 1) for s in (1, -1)} | {Point(0, 0)}
    dyadic = inst.lines[:n - 4]
    assert len({l.key for l in dyadic}) == 2 ** (t + 2) - 2
    for g, h in combinations(dyadic, 2):
        if g.a == h.a:
            continue
        x = (h.b - g.b) / (g.a - h.a)
        p = Point(x, g.at(x))
        assert p in pts or p.y < x * x
        assert -xmax <= x <= xmax
    o = brute_force(inst)
    assert o.max_level == n - t - 2 == exp.max_level
    assert o.points == exp.max_points
    assert o.all_vertex_levels[exp.corner] == n - t - 3 == exp.corner_level
    assert o.all_vertex_levels[Point(0, 0)] == n - 2 * t - 2 == exp.center_level
    for p in exp.max_points:
        assert upper_count(inst, p) == t


def test_lower_bound_small_values():
    inst, exp = gen_lower_bound(2)
    assert exp.n == 18 and exp.max_level == 14 and exp.center_level == 12
    with pytest.raises(ValueError):
        gen_lower_bound(0)


def test_random_general_position():
    inst = gen_random(5, 1)
    assert len(inst.lines) == 5 and not inst.verticals and not inst.multiplicities
    assert len({l.a for l in inst.lines}) == 5
    o = brute_force(inst)
    assert len(o.all_vertex_levels) == 10 and set(o.degrees.values()) == {2}


def test_random_fully_concurrent():
    inst = gen_random(8, 7, concurrency=1.0)
    o = brute_force(inst)
    assert len(inst.lines) == 8 and o.max_level == 0 and len(o.points) == 1


def test_random_mixed_agrees():
    inst = gen_random(40, 3, concurrency=0.4, parallel=0.3)
    assert solve_distinct(inst).points == brute_force(inst).points


@hyp.given(hys.integers(1, 40), hys.integers(0, 10 ** 6), hys.sampled_from([0, 0.3, 1.0]),
           hys.sampled_from([0, 0.4]), hys.sampled_from([0, 0.3]), hys.sampled_from([0, 0.2]))
@hyp.settings(max_examples=80, deadline=None)
def test_random_contract(n, seed, conc, par, dup, vert):
    inst = gen_random(n, seed, conc, par, dup, vert)
    assert inst.n_lines + len(inst.verticals) == n
    assert inst == gen_random(n, seed, conc, par, dup, vert)
    if not dup:
        assert not inst.has_duplicates()


def test_weighted_examples():
    for n in (2, 5, 9):
        inst = Instance.from_pairs([(a, 0) for a in range(n)])
        s = weighted_level_stats(inst, 0)
        assert (s.vertex_count, s.weight) == (1, n)
    s = weighted_level_stats(TRIANGLE, 0)
    assert (s.vertex_count, s.weight) == (1, 2)
    s = weighted_level_stats(Instance.from_pairs([(1, 0), (-1, 0), (0, -1)]), 0)
    assert (s.vertex_count, s.weight) == (2, 4)
    with pytest.raises(BadK):
        weighted_level_stats(TRIANGLE, 3)
    with pytest.raises(ValueError):
        weighted_level_stats(Instance.from_pairs([(1, 0), (1, 0)]), 0)


@pytest.mark.parametrize("seed", range(20))
def test_weighted_matches_oracle(seed):
    inst = gen_random(4 + seed % 20, seed, concurrency=0.7, parallel=0.2)
    o = brute_force(inst)
    n = len(inst.lines)
    for k in range(n):
        # a vertex of level l and degree d lies on the lower levels l .. l+d-1
        on = [p for p, lev in o.all_vertex_levels.items() if lev <= k <= lev + o.degrees[p] - 1]
        s = weighted_level_stats(inst, k)
        assert s.vertex_count == len(on)
        assert s.weight == sum(o.degrees[p] for p in on)
        assert s.weight >= 2 * s.vertex_count


def test_weighted_bound_large():
    inst = gen_random(400, 11, concurrency=0.5, parallel=0.2)
    for k in (1, 8, 64):
        s = weighted_level_stats(inst, k)
        assert s.weight <= 8 * 400 * k ** (1 / 3)


def test_apex_generator():
    inst = gen_apex(20, 1)
    assert len(inst.lines) == 20
    with pytest.raises(ValueError):
        gen_apex(2, 1)
