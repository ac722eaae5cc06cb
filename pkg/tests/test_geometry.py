import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from zarankiewicz_geom.geometry import (
    Box, DimensionMismatch, Ellipse, HSeg, Halfspace, Parallelotope, Polytope, UnboundedPolytope,
    VSeg, contains, dot, dualize, lift_ellipse, lift_point, normalize_for_duality,
    normalized_incident, orientation, polytope_from_box, rat, rat_from_str, rat_to_str,
    segments_intersect, vertex_enumeration,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
pt2 = st.tuples(small, small)
pt3 = st.tuples(small, small, small)


def test_rationals_roundtrip():
    assert rat("3/4") == F(3, 4)
    assert rat("0.4") == F(2, 5)
    assert rat_from_str(rat_to_str(F(-7, 3))) == F(-7, 3)
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        rat_from_str("2/4")


def test_disk_membership():
    disk = Ellipse(1, 1, (0, 0))
    assert contains(disk, (F(0), F(0)))
    assert not contains(disk, (F(1), F(1)))
    with pytest.raises(DimensionMismatch):
        contains(disk, (F(0), F(0), F(0)))


@given(st.lists(pt3, min_size=1, max_size=20))
@settings(max_examples=50, deadline=None)
def test_parallelotope_matches_hrep(points):
    pc = Parallelotope((0, 0, 0), ((2, 1, 0), (0, 1, 1), (1, 0, 3)))
    hs = pc.halfspaces()
    for p in points:
        assert pc.contains(p) == all(h.contains(p) for h in hs)
        inside = all(0 <= c <= 1 for c in pc.coordinates(p))
        assert inside == pc.contains(p)


def test_axis_segments():
    assert segments_intersect(HSeg(0, 2, 1), VSeg(1, 0, 2)) == (1, 1)
    assert segments_intersect(HSeg(0, 1, 1, closed_hi=False), VSeg(1, 0, 2)) is None
    assert segments_intersect(VSeg(1, 0, 2), HSeg(0, 1, 1)) == (1, 1)


@given(small, small, small, small, small, small)
@settings(max_examples=200, deadline=None)
def test_axis_segments_vs_parametric(a, b, h, v, x, y):
    a, b = sorted((a, b))
    x, y = sorted((x, y))
    got = segments_intersect(HSeg(a, b, h), VSeg(v, x, y))
    # parametric: (a + s(b-a), h) = (v, x + t(y-x)), s, t in [0, 1]
    s_ok = (a == b == v) or (a != b and 0 <= (v - a) / (b - a) <= 1)
    t_ok = (x == y == h) or (x != y and 0 <= (h - x) / (y - x) <= 1)
    assert (got is not None) == (s_ok and t_ok)


@given(pt2, pt2, pt2)
def test_orientation_antisymmetric(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)


def test_orientation_values():
    assert orientation((0, 0), (1, 0), (0, 1)) == 1
    assert orientation((0, 0), (1, 1), (2, 2)) == 0


def test_vertex_counts():
    sq = polytope_from_box(Box((0, 0), (1, 1)))
    assert len(sq.vertices) == 4
    assert len(polytope_from_box(Box((0, 0, 0), (1, 1, 1))).vertices) == 8
    simplex = Polytope([Halfspace((-1, 0, 0), 0), Halfspace((0, -1, 0), 0),
                        Halfspace((0, 0, -1), 0), Halfspace((1, 1, 1), 1)])
    assert len(simplex.vertices) == 4
    with pytest.raises(UnboundedPolytope):
        vertex_enumeration(Polytope([Halfspace((1, 0), 1), Halfspace((0, 1), 1)]))


@given(st.lists(pt3, min_size=1, max_size=30))
@settings(max_examples=30, deadline=None)
def test_vertex_hull_reproduces_membership(points):
    # the octahedron |x|+|y|+|z| <= 2 against the convex hull of its vertices
    hs = [Halfspace((sx, sy, sz), 2) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    Q = Polytope(hs)
    V = Q.vertices
    assert len(V) == 6
    for p in points:
        in_hull = sum(abs(c) for c in p) <= max(sum(abs(c) for c in v) for v in V)
        assert Q.contains(p) == in_hull


def test_lift_examples():
    assert lift_point((0, 0)) == (0, 0, 0, 0)
    assert lift_point((F(1, 2), 1)) == (F(1, 4), F(1, 2), 1, 1)
    assert lift_point((-1, 2)) == (1, -1, 4, 2)
    h = lift_ellipse(Ellipse(1, 1, (0, 0)))
    assert h.normal == (1, 0, 1, 0) and h.offset == 1
    h = lift_ellipse(Ellipse(4, 4, (F(1, 2), F(1, 2))))
    assert h.normal == (4, -4, 4, -4) and h.offset == -1


@given(pt2, st.fractions(min_value=F(1, 9), max_value=9, max_denominator=9),
       st.fractions(min_value=F(1, 9), max_value=9, max_denominator=9), pt2)
@settings(max_examples=300)
def test_lift_equivalence(p, a, b, c):
    E = Ellipse(a, b, c)
    assert E.contains(p) == lift_ellipse(E).contains(lift_point(p))


def _incidence(points, halfspaces):
    return [[h.contains(p) for h in halfspaces] for p in points]


def test_normalize_identity_and_shift():
    pts = [(F(0), F(0), F(1)), (F(1), F(1), F(3))]
    hs = [Halfspace((0, 0, 1), 2, ">=")]
    cfg = normalize_for_duality(pts, hs)
    assert cfg.shift == (0, 0, 0)
    assert list(cfg.points) == pts
    shifted = [(x, y, z - 5) for x, y, z in pts]
    hs2 = [Halfspace((0, 0, 1), -3, ">=")]
    cfg = normalize_for_duality(shifted, hs2)
    assert all(p[2] > 0 for p in cfg.points)
    after = [[normalized_incident(p, n) for n in cfg.normals] for p in cfg.points]
    assert after == _incidence(shifted, hs2)


@given(st.lists(pt3, min_size=1, max_size=6),
       st.lists(st.tuples(small, small, st.fractions(min_value=F(1, 3), max_value=3, max_denominator=3),
                          small), min_size=1, max_size=6))
@settings(max_examples=100, deadline=None)
def test_normalize_and_dualize_preserve_incidences(points, rows):
    hs = [Halfspace((a, b, c), d, ">=") for a, b, c, d in rows]
    try:
        cfg = normalize_for_duality(points, hs)
    except ValueError:
        return  # boundary through the new origin
    before = _incidence(points, hs)
    after = [[normalized_incident(p, n) for n in cfg.normals] for p in cfg.points]
    assert before == after
    dp, dn = dualize(cfg.points, cfg.normals)
    dual = [[normalized_incident(p, n) for n in dn] for p in dp]
    assert dual == [list(col) for col in zip(*after)]
    assert dualize(dp, dn) == (cfg.points, cfg.normals)


def test_dualize_single_pair():
    (p,), (n,) = dualize([(0, 0, 1)], [(0, 0, 1)])
    assert normalized_incident(p, n)
    (p,), (n,) = dualize([(0, 0, F(1, 2))], [(0, 0, 1)])
    assert not normalized_incident(p, n) and dot(p, n) < 1
