import pytest

from maxlevel.coincide import (
    Segment, SegmentSet, arrangement_extent, build_delta_k, build_pi_k, dedup, has_detached,
    lower_envelope_vertices, search_k0, solve_coincide, upper_membership,
)
from maxlevel.distinct import solve_distinct
from maxlevel.kernel import EmptyInstance, Instance, Line, Point, mpq
from maxlevel.testbed import brute_force, gen_random

from cases import coincide_case, distinct_case

PAIR = Instance.from_pairs([(1, 0), (-1, 0)], mult={1: 2})
ROOF = Instance.from_pairs([(0, 1), (1, 0), (-1, 0)], mult={1: 2})


def seg(x0, x1, a, b, i=1):
    l = Line(i, mpq(a), mpq(b))
    return Segment(Point(mpq(x0), l.at(mpq(x0))), Point(mpq(x1), l.at(mpq(x1))), l)


def test_dedup():
    v = dedup(Instance.from_pairs([(1, 0), (-1, 0), (1, 0)], mult={2: 3}))
    assert [g.id for g in v.gamma] == [1, 2] and v.mu == {1: 2, 2: 3}
    assert v.f == [1, 2, 2, 2, 1] and v.n == 5
    assert sorted(v.F.values()) == [1, 1, 2, 2, 2]


def test_upper_membership_examples():
    v = dedup(PAIR)
    right = (mpq(0), None)
    assert [upper_membership(v, 1, right, k) for k in range(3)] == [True, True, False]
    assert [upper_membership(v, 2, right, k) for k in range(3)] == [False, False, True]
    t = dedup(Instance.from_pairs([(1, 0), (-1, 0), (0, 1)]))
    assert upper_membership(t, 3, (mpq(-1), mpq(1)), 0)
    assert not upper_membership(t, 3, (mpq(-1), mpq(1)), 1)


def test_pi_examples():
    v = dedup(PAIR)
    pi = build_pi_k(v, 1)
    assert [e.id for e in pi.edges] == [1, 1]
    pi = build_pi_k(v, 2)
    assert [e.id for e in pi.edges] == [1, 2] and [x.point for x in pi.vertices] == [Point(0, 0)]


def test_delta_examples():
    v = dedup(PAIR)
    assert build_delta_k(build_pi_k(v, 0), v).segments == []
    d = build_delta_k(build_pi_k(v, 1), v)
    assert [(s.line.id, s.left, s.right) for s in d.segments] == [(2, Point(-1, 1), Point(0, 0))]
    assert not has_detached(d)
    r = dedup(ROOF)
    d = build_delta_k(build_pi_k(r, 3), r)
    assert sorted((s.line.id, s.left.x, s.right.x) for s in d.segments) == [(1, -2, 2), (2, 0, 2), (3, -2, 0)]
    assert has_detached(d)


def test_has_detached_examples():
    assert not has_detached(SegmentSet([]))
    assert not has_detached(SegmentSet([seg(-1, 1, 1, 0)]))
    assert has_detached(SegmentSet([seg(-1, 1, 1, 0, 1), seg(-1, 1, -1, 0, 2)]))
    assert not has_detached(SegmentSet([seg(-1, 0, -1, 0, 1), seg(0, 1, 1, 0, 2)]))
    assert not has_detached(SegmentSet([seg(-2, 0, 1, 0, 1), seg(0, 2, -1, 0, 2)]))
    # the crossing is found only after an intermediate segment leaves
    assert has_detached(SegmentSet([seg(-4, 4, 1, 0, 1), seg(-4, 4, -1, 0, 2), seg(-4, -3, 0, 0, 3)]))


def test_lower_envelope_vertices():
    assert lower_envelope_vertices([seg(-2, -1, 1, 0, 1), seg(1, 2, -1, 0, 2)]) == []
    assert lower_envelope_vertices([seg(-2, 2, 1, 0, 1), seg(-2, 2, -1, 0, 2)]) == [Point(0, 0)]
    # contact at a shared endpoint is not interior
    segs = [seg(-2, 0, -1, 0, 3), seg(-2, 2, 0, 1, 1), seg(0, 2, 1, 0, 2)]
    assert lower_envelope_vertices(segs) == [Point(-1, 1), Point(1, 1)]


def test_search_k0():
    assert search_k0(lambda k: k >= 5, 10) == 5
    assert search_k0(lambda k: k >= 5, 10, "exponential") == 5
    assert search_k0(lambda k: False, 10) is None
    assert search_k0(lambda k: False, 10, "exponential") is None
    assert search_k0(lambda k: True, 1, "exponential") == 0
    probed = []
    search_k0(lambda k: probed.append(k) or k >= 40, 100, "exponential")
    assert probed[:6] == [1, 2, 4, 8, 16, 32]
    with pytest.raises(ValueError):
        search_k0(lambda k: True, 4, "ternary")


def test_solve_examples():
    for strategy in ("binary", "exponential"):
        res = solve_coincide(PAIR, strategy)
        assert (res.max_level, res.points) == (0, [Point(0, 0)])
        res = solve_coincide(ROOF, strategy)
        assert (res.max_level, res.k0, res.points) == (1, 3, [Point(-1, 1), Point(1, 1)])
        assert res.search == strategy and res.mode == "coincide"
    with pytest.raises(EmptyInstance):
        solve_coincide(Instance())


def test_single_line_with_copies():
    res = solve_coincide(Instance.from_pairs([(1, 2)], mult={1: 4}))
    assert res.max_level is None and res.vertices == []


def kth_top(view, x, k):
    ys = sorted((g.at(x) for g in view.gamma for _ in range(view.mu[g.id])), reverse=True)
    return ys[k]


def portions_above(view, k, extent):
    """Maximal pieces of each distinct line strictly above the (k+1)-th highest copy."""
    xl, xr = extent[0] - 1, extent[1] + 1
    xs = {xl, xr}
    for g in view.gamma:
        for h in view.gamma:
            if g.a != h.a:
                xs.add((h.b - g.b) / (g.a - h.a))
    xs = sorted(x for x in xs if xl <= x <= xr)
    out = set()
    for g in view.gamma:
        start = None
        for x0, x1 in zip(xs, xs[1:]):
            up = g.at((x0 + x1) / 2) > kth_top(view, (x0 + x1) / 2, k)
            if up and start is None:
                start = x0
            if start is not None and (not up or g.at(x0) <= kth_top(view, x0, k)) and start != x0:
                out.add((g.id, start, x0))
                start = x0 if up else None
            if not up:
                start = None
        if start is not None:
            out.add((g.id, start, xr))
    return out


@pytest.mark.parametrize("seed", range(60))
def test_delta_is_exactly_the_portions_above(seed):
    inst = gen_random(2 + seed % 9, seed, concurrency=(seed % 4) / 4, parallel=(seed % 3) / 4, duplicate=0.35)
    view = dedup(inst)
    extent = arrangement_extent(view.gamma)
    if extent is None:
        pytest.skip("no vertex")
    for k in range(view.n):
        d = build_delta_k(build_pi_k(view, k), view, extent)
        got = [(s.line.id, s.left.x, s.right.x) for s in d.segments]
        assert len(got) == len(set(got))
        assert set(got) == portions_above(view, k, extent)


@pytest.mark.parametrize("seed", range(40))
def test_pi_edges_satisfy_membership(seed):
    inst = coincide_case(seed).without_verticals()
    view = dedup(inst)
    for k in {0, seed % view.n, view.n - 1}:
        pi = build_pi_k(view, k)
        xs = [v.point.x for v in pi.vertices]
        bounds = list(zip([None] + xs, xs + [None]))
        for e, iv in zip(pi.edges, bounds):
            assert upper_membership(view, e.id, iv, k)


@pytest.mark.parametrize("seed", range(30))
def test_detached_is_monotone(seed):
    inst = coincide_case(seed).without_verticals()
    view = dedup(inst)
    extent = arrangement_extent(view.gamma)
    if extent is None:
        pytest.skip("no vertex")
    flags = [has_detached(build_delta_k(build_pi_k(view, k), view, extent)) for k in range(view.n)]
    assert flags == sorted(flags)


@pytest.mark.parametrize("seed", range(100))
def test_matches_oracle(seed):
    inst = coincide_case(seed)
    o = brute_force(inst)
    a, b = solve_coincide(inst, "binary"), solve_coincide(inst, "exponential")
    assert (a.max_level, a.points) == (o.max_level, o.points)
    assert (a.max_level, a.points, a.k0) == (b.max_level, b.points, b.k0)


@pytest.mark.parametrize("seed", range(30))
def test_agrees_with_distinct_solver(seed):
    inst = distinct_case(seed)
    a, b = solve_coincide(inst), solve_distinct(inst)
    assert (a.max_level, a.points) == (b.max_level, b.points)
