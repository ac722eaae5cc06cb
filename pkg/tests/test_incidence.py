import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from zarankiewicz_geom.constructions import (
    chazelle_rectangles, inscribed_ellipses, run_construction, to_points,
)
from zarankiewicz_geom.geometry import Box, HSeg, Halfspace, Polytope, VSeg, polytope_from_box
from zarankiewicz_geom.graph import complete_bipartite, find_biclique, gen_projective_plane, random_bipartite
from zarankiewicz_geom.incidence import (
    SemilinearSpec, box_spec, build_incidence_graph, build_segment_graph, choose_j0,
    conjunction_graph, corner_spec, interval_spec, is_axis_box_image, piece_box, piece_type, prepare_reduction,
    reduce_to_boxes, reduction_trial, semilinear_graph, semilinear_to_polytopes, type_map,
    zarankiewicz_report,
)
from zarankiewicz_geom.seeding import mix64


def edge_set(G):
    na = len(G.classA)
    return {(a, b - na) for a, b in G.edges()}


def test_segment_graph_small():
    G = build_segment_graph([VSeg(1, 0, 2)], [HSeg(0, 2, 1)])
    assert G.m == 1
    k = 4
    vs = [VSeg(i, 0, k) for i in range(1, k + 1)]
    hs = [HSeg(0, k + 1, j) for j in range(1, k + 1)]
    assert build_segment_graph(vs, hs).m == k * k


def test_segment_graph_vs_pairwise():
    rng = random.Random(1)
    vs, hs = [], []
    for _ in range(25):
        x, y = sorted(rng.randint(0, 20) for _ in range(2))
        vs.append(VSeg(rng.randint(0, 20), x, y))
        a, b = sorted(rng.randint(0, 20) for _ in range(2))
        hs.append(HSeg(a, b, rng.randint(0, 20)))
    G = build_segment_graph(vs, hs)
    brute = {(i, j) for i, v in enumerate(vs) for j, h in enumerate(hs)
             if h.a <= v.v <= h.b and v.x <= h.h <= v.y}
    assert edge_set(G) == brute


def test_incidence_graph_closed_ranges():
    box = Box((0, 0), (1, 1))
    assert build_incidence_graph([(F(1, 2), F(1, 2))], [box]).m == 1
    assert build_incidence_graph([(1, F(1, 2))], [box]).m == 1
    assert build_incidence_graph([(2, 0)], [box]).m == 0


def test_chazelle_counts_match_construction():
    res = run_construction(3, 3, seed=2)
    G = build_incidence_graph(to_points(res.points, res.bits),
                              inscribed_ellipses(chazelle_rectangles(3, 3)))
    assert G.m == res.incidences
    assert edge_set(G) == set(res.edges)


def test_interval_spec():
    X = [(0, 2), (1, 3), (F(5, 2), F(5, 2))]
    Y = [(0,), (1,), (F(5, 2),), (4,)]
    G = semilinear_graph(interval_spec(), X, Y)
    direct = {(i, j) for i, (l, r) in enumerate(X) for j, (p,) in enumerate(Y) if l <= p <= r}
    assert edge_set(G) == direct


@pytest.mark.parametrize("d", [1, 2, 3])
def test_corner_spec_dominance(d):
    rng = random.Random(d)
    X = [tuple(rng.randint(0, 5) for _ in range(d)) for _ in range(12)]
    Y = [tuple(rng.randint(0, 5) for _ in range(d)) for _ in range(12)]
    G = semilinear_graph(corner_spec(d), X, Y)
    direct = {(i, j) for i, b in enumerate(X) for j, y in enumerate(Y)
              if all(yk <= bk for yk, bk in zip(y, b))}
    assert edge_set(G) == direct


coef = st.integers(-3, 3)


@given(st.lists(st.tuples(st.tuples(coef, coef), st.tuples(coef, coef), coef), min_size=6, max_size=6),
       st.lists(st.tuples(coef, coef), min_size=1, max_size=6),
       st.lists(st.tuples(coef, coef), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_random_spec_vs_formula(rows, X, Y):
    spec = SemilinearSpec(2, 2, (tuple(rows[:3]), tuple(rows[3:])))
    G = semilinear_graph(spec, X, Y)

    def f(a, b, g, x, y):
        return a[0] * x[0] + a[1] * x[1] + b[0] * y[0] + b[1] * y[1] + g <= 0

    brute = {(i, j) for i, x in enumerate(X) for j, y in enumerate(Y)
             if any(all(f(a, b, g, x, y) for a, b, g in conj) for conj in (rows[:3], rows[3:]))}
    assert edge_set(G) == brute
    j0 = choose_j0(spec, X, Y)
    G0 = conjunction_graph(spec, j0, X, Y)
    assert G0.m * spec.t >= G.m
    union = set()
    for j in range(spec.t):
        union |= edge_set(conjunction_graph(spec, j, X, Y))
    assert union == edge_set(G)
    polys = semilinear_to_polytopes(spec, j0, X)
    via_polys = {(i, j) for i, P in enumerate(polys) for j, y in enumerate(Y)
                 if P.contains(tuple(F(c) for c in y))}
    assert via_polys == edge_set(G0)


def test_box_spec_matches_box_incidence():
    rng = random.Random(7)
    pts = [tuple(rng.randint(0, 6) for _ in range(2)) for _ in range(15)]
    boxes = []
    for _ in range(10):
        lo = tuple(rng.randint(0, 4) for _ in range(2))
        hi = tuple(l + rng.randint(0, 3) for l in lo)
        boxes.append(Box(lo, hi))
    G1 = build_incidence_graph(pts, boxes)
    G2 = semilinear_graph(box_spec(2), pts, [b.lo + b.hi for b in boxes])
    assert edge_set(G1) == edge_set(G2)


def triangle_prism_instance():
    H = [Halfspace((-1, 0, 0), 0), Halfspace((0, -1, 0), 0), Halfspace((1, 1, 0), 0),
         Halfspace((0, 0, 1), 0), Halfspace((0, 0, -1), 0)]
    Q = Polytope([Halfspace((-1, 0, 0), 0), Halfspace((0, -1, 0), 0), Halfspace((1, 1, 0), 4),
                  Halfspace((0, 0, 1), 1), Halfspace((0, 0, -1), 0)])
    points = [(F(1, 2), F(1, 2), F(1, 2)), (F(3, 2), F(3, 2), F(1, 4)), (F(3), F(1, 2), F(1, 2))]
    return points, [Q], H


def enumerated_survival(prep):
    """Survival probability of every edge over the whole finite space of (type, piece) draws."""
    draws = list(itertools.product(prep.types, *[range(len(ps)) for ps in prep.pieces]))
    hits = {e: 0 for e in prep.exact_survival()}
    for alpha, *chosen in draws:
        for (i, j) in hits:
            pc = prep.pieces[j][chosen[j]]
            if piece_type(pc) == alpha and pc.contains(prep.points[i]):
                hits[(i, j)] += 1
    return {e: F(h, len(draws)) for e, h in hits.items()}


def test_survival_probabilities():
    points, polys, H = triangle_prism_instance()
    prep = prepare_reduction(points, polys, H)
    exact = prep.exact_survival()
    assert exact == enumerated_survival(prep)
    assert all(p >= F(1, prep.A * prep.B) for p in exact.values())
    trials = 500
    counts = {e: 0 for e in exact}
    for t in range(trials):
        res = reduction_trial(prep, random.Random(mix64(11, t)))
        assert res.all_boxes_ok
        assert set(res.edges) <= set(exact)
        for e in res.edges:
            counts[e] += 1
    for e, p in exact.items():
        sigma = math.sqrt(float(p * (1 - p)) / trials)
        assert abs(counts[e] / trials - float(p)) <= 3 * sigma + 1e-12


def test_axis_boxes_single_type():
    boxes = [Box((0, 0, 0), (2, 2, 2)), Box((1, 1, 1), (3, 4, 2))]
    polys = [polytope_from_box(b) for b in boxes]
    H = [Halfspace(n, 0) for n in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    pts = [(1, 1, 1), (F(5, 2), 3, F(3, 2)), (0, 0, 3)]
    prep, res = reduce_to_boxes(pts, polys, H, seed=0)
    assert prep.B == 1 and prep.A == 1
    assert res.all_boxes_ok and sorted(res.kept) == [0, 1]
    assert sorted(res.edges) == sorted(edge_set(prep.graph))


def test_type_map_sends_pieces_to_boxes():
    points, polys, H = triangle_prism_instance()
    prep = prepare_reduction(points, polys, H)
    for ps in prep.pieces:
        for pc in ps:
            alpha = piece_type(pc)
            assert is_axis_box_image(pc, type_map(alpha), piece_box(pc, alpha))


def test_zarankiewicz_report():
    rows = zarankiewicz_report(gen_projective_plane(2), 2)
    assert rows[1]["s"] == 2 and rows[1]["kss_free"]
    rows = zarankiewicz_report(complete_bipartite(3, 3), 3)
    assert not rows[2]["kss_free"] and rows[2]["witness"] is not None
    G = random_bipartite(8, 8, F(1, 2), seed=4)
    for row in zarankiewicz_report(G, 4):
        assert row["kss_free"] == (find_biclique(G, row["s"]) is None)
