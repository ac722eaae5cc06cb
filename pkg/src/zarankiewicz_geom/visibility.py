"""Visibility graphs of points on x-monotone and star-shaped polygons."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .constructions import (
    Scene, is_simple_polygon, is_star_center, is_x_monotone, no_three_collinear, scale_to_int,
)
from .geometry import HSeg, VSeg, Vec, point_in_polygon, segments_intersect, vec
from .graph import BipartiteGraph, Graph, OrderedGraph
from .incidence import build_segment_graph
from .ordered import NAMED_PATTERNS, contains_pattern


class GeneralPositionError(ValueError):
    pass


class DoubleCherryFound(ValueError):
    def __init__(self, witness):
        super().__init__(f"bipartite-induced double cherry at {witness}")
        self.witness = witness


@dataclass(frozen=True)
class PolygonScene:
    polygon: tuple  # counterclockwise
    P: tuple  # indices into polygon
    kind: str  # "x_monotone" | "star" | "convex"
    center: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "polygon", tuple(vec(p) for p in self.polygon))
        P = tuple(sorted(set(self.P)))
        object.__setattr__(self, "P", P)
        if self.center is not None:
            object.__setattr__(self, "center", vec(self.center))
        if self.kind not in ("x_monotone", "star", "convex"):
            raise ValueError(f"unknown polygon kind {self.kind!r}")
        if not is_simple_polygon(self.polygon):
            raise ValueError("polygon is not simple and counterclockwise")
        if self.kind == "x_monotone" and not is_x_monotone(self.polygon):
            raise ValueError("polygon is not x-monotone")
        if self.kind == "star":
            if self.center is None or not is_star_center(self.polygon, self.center):
                raise ValueError("center does not see the whole boundary")
            if any(p[1] == self.center[1] for p in self.polygon):
                raise GeneralPositionError("a vertex lies on the cutting line")
        if not no_three_collinear(list(self.polygon)):
            raise GeneralPositionError("three polygon vertices are collinear")

    @classmethod
    def from_scene(cls, scene: Scene, P=None) -> "PolygonScene":
        kind = {"x_monotone_polygon": "x_monotone", "star_polygon": "star",
                "convex_polygon": "convex"}[scene.kind]
        P = range(len(scene.polygon)) if P is None else P
        return cls(tuple(scene.polygon), tuple(P), kind, scene.center)


def clockwise_order(scene: PolygonScene) -> list[int]:
    """Polygon vertex indices in clockwise order from the kind's natural start.

    x-monotone and convex: start at the rightmost vertex, so the lower chain
    comes first. star: start at the first vertex above the center line.
    """
    K = scene.polygon
    n = len(K)
    if scene.kind == "star":
        cy = scene.center[1]
        up = [p[1] > cy for p in K]
        start = next(i for i in range(n) if up[i] and not up[(i + 1) % n])
    else:
        start = max(range(n), key=lambda i: K[i])
    return [(start - t) % n for t in range(n)]


def split_chains(scene: PolygonScene) -> tuple[list[int], list[int]]:
    """The two arcs as polygon indices, each in clockwise order.

    x-monotone: lower chain (including both extreme vertices) then the interior
    of the upper chain. star: the part above the horizontal line through the
    center, then the part below.
    """
    order = clockwise_order(scene)
    K = scene.polygon
    if scene.kind == "star":
        cy = scene.center[1]
        first = [i for i in order if K[i][1] > cy]
        second = [i for i in order if K[i][1] < cy]
        return first, second
    left = min(range(len(K)), key=lambda i: K[i])
    cut = order.index(left)
    return order[:cut + 1], order[cut + 1:]


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _pip_int(K, p) -> int:
    """Integer point-in-polygon: +1 inside, 0 on the boundary, -1 outside."""
    inside = False
    px, py = p
    n = len(K)
    for i in range(n):
        a, b = K[i], K[(i + 1) % n]
        if (_orient(a, b, p) == 0 and min(a[0], b[0]) <= px <= max(a[0], b[0])
                and min(a[1], b[1]) <= py <= max(a[1], b[1])):
            return 0
        if (a[1] > py) != (b[1] > py):
            # px < x-coordinate of the edge at height py, without division
            lhs = (px - a[0]) * (b[1] - a[1])
            rhs = (py - a[1]) * (b[0] - a[0])
            if (lhs < rhs) == (b[1] > a[1]):
                inside = not inside
    return 1 if inside else -1


def _visible(K2: Sequence, p: tuple, q: tuple) -> bool:
    """K2, p, q are integer points already doubled so the midpoint stays integral."""
    n = len(K2)
    for i in range(n):
        c, d = K2[i], K2[(i + 1) % n]
        if (_orient(p, q, c) * _orient(p, q, d) < 0
                and _orient(c, d, p) * _orient(c, d, q) < 0):
            return False
    mid = ((p[0] + q[0]) // 2, (p[1] + q[1]) // 2)
    return _pip_int(K2, mid) >= 0


class Visibility(NamedTuple):
    graph: OrderedGraph
    order: list  # vertex t of the graph is polygon vertex order[t]


def visibility_graph(scene: PolygonScene) -> Visibility:
    K2 = [(2 * x, 2 * y) for x, y in scale_to_int(scene.polygon)]
    pset = set(scene.P)
    order = [i for i in clockwise_order(scene) if i in pset]
    edges = [(s, t) for s in range(len(order)) for t in range(s + 1, len(order))
             if _visible(K2, K2[order[s]], K2[order[t]])]
    g = Graph.from_edges(len(order), edges)
    return Visibility(OrderedGraph(g.n, g.adj), order)


def _contact_params(p: Vec, q: Vec, c: Vec, d: Vec) -> list[Fraction]:
    """Parameters t in [0, 1] where p + t (q - p) meets the closed segment cd."""
    r = (q[0] - p[0], q[1] - p[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    w = (c[0] - p[0], c[1] - p[1])
    if den == 0:
        if w[0] * r[1] - w[1] * r[0] != 0:
            return []
        rr = r[0] * r[0] + r[1] * r[1]
        ts = [Fraction(w[0] * r[0] + w[1] * r[1]) / rr,
              Fraction((d[0] - p[0]) * r[0] + (d[1] - p[1]) * r[1]) / rr]
        return [t for t in ts if 0 <= t <= 1]
    t = Fraction(w[0] * s[1] - w[1] * s[0]) / den
    u = Fraction(w[0] * r[1] - w[1] * r[0]) / den
    return [t] if 0 <= t <= 1 and 0 <= u <= 1 else []


def visibility_oracle(K: Sequence[Vec], p: Vec, q: Vec, samples: int = 16) -> bool:
    """Independent containment test for the segment pq in the closed polygon.

    Checks ``samples`` evenly spaced interior points and, so that thin
    excursions between samples are not missed, the midpoint of every piece
    between consecutive boundary contacts.
    """
    ts = {Fraction(i, samples + 1) for i in range(1, samples + 1)}
    cuts = {Fraction(0), Fraction(1)}
    n = len(K)
    for i in range(n):
        cuts.update(_contact_params(p, q, K[i], K[(i + 1) % n]))
    cuts = sorted(cuts)
    ts.update((a + b) / 2 for a, b in zip(cuts, cuts[1:]))
    for t in ts:
        x = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        if point_in_polygon(K, x) < 0:
            return False
    return True


# --- separated sets and the segment reduction -------------------------------

class SegmentFamily(NamedTuple):
    vsegs: list  # VSeg at x = k (1-based index into A)
    hsegs: list  # HSeg at y = l (1-based index into B)
    v_owner: list  # A-vertex of each vertical
    h_owner: list  # B-vertex of each horizontal


class Reduction(NamedTuple):
    family: SegmentFamily
    Q: BipartiteGraph
    cross_edges: int  # e(G[A, B])


def separated_reduction(G: Graph, A: Sequence[int], B: Sequence[int], audit: bool = True) -> Reduction:
    """Vertical segment per A-vertex spanning its first..last B-neighbour, horizontal per B-vertex."""
    A, B = sorted(A), sorted(B)
    if A and B and A[-1] >= B[0]:
        raise ValueError("need A < B in the vertex order")
    if audit:
        sub, labels = G.induced(A + B)
        w = contains_pattern(sub, len(A), NAMED_PATTERNS["double_cherry"])
        if w is not None:
            raise DoubleCherryFound(tuple(tuple(labels[x] for x in part) for part in w))
    bpos = {b: l for l, b in enumerate(B, start=1)}
    apos = {a: k for k, a in enumerate(A, start=1)}
    vsegs, hsegs, vo, ho = [], [], [], []
    for k, a in enumerate(A, start=1):
        nb = sorted(bpos[b] for b in G.adj[a] if b in bpos)
        if nb:
            vsegs.append(VSeg(k, nb[0], nb[-1]))
            vo.append(a)
    for l, b in enumerate(B, start=1):
        nb = sorted(apos[a] for a in G.adj[b] if a in apos)
        if nb:
            hsegs.append(HSeg(nb[0], nb[-1], l))
            ho.append(b)
    Q = build_segment_graph(vsegs, hsegs)
    return Reduction(SegmentFamily(vsegs, hsegs, vo, ho), Q, G.edges_between(A, B))


def intersections_are_edges(G: Graph, red: Reduction) -> bool:
    """Every vertical/horizontal intersection point (k, l) indexes an edge a_k b_l of G."""
    fam = red.family
    for i, v in enumerate(fam.vsegs):
        for j, h in enumerate(fam.hsegs):
            p = segments_intersect(h, v)
            if p is not None and fam.h_owner[j] not in G.adj[fam.v_owner[i]]:
                return False
    return True


# --- pattern audits ---------------------------------------------------------------

def _ordered_sub(G: Graph, verts: Sequence[int]) -> Graph:
    """Induced subgraph whose index order follows ``verts``."""
    pos = {v: t for t, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u in verts for v in G.adj[u] if v in pos and pos[u] < pos[v]]
    return Graph.from_edges(len(verts), edges)


def audit_patterns(scene: PolygonScene, scene_id=None) -> list[dict]:
    """Search for the patterns the visibility claims forbid; an empty list means clean."""
    vis = visibility_graph(scene)
    G, order = vis.graph, vis.order
    where = {p: t for t, p in enumerate(order)}
    K = scene.polygon
    first, second = split_chains(scene)
    first = [where[i] for i in first if i in where]
    second = [where[i] for i in second if i in where]
    report = []

    def run(name, sub, split, labels):
        w = contains_pattern(sub, split, NAMED_PATTERNS[name])
        if w is not None:
            report.append({"scene_id": scene_id, "pattern": name,
                           "witness": [[labels[x] for x in part] for part in w]})

    cross = sorted(first) + sorted(second)
    run("double_cherry", _ordered_sub(G, cross), len(first), [order[t] for t in cross])
    if scene.kind in ("x_monotone", "convex"):
        # each chain, including both extreme vertices, ordered left to right
        lo = min(range(len(K)), key=lambda i: K[i])
        hi = max(range(len(K)), key=lambda i: K[i])
        upper = [t for t in second] + [where[i] for i in (lo, hi) if i in where]
        for chain in (first, upper):
            verts = sorted(set(chain), key=lambda t: K[order[t]][0])
            run("familyM", _ordered_sub(G, verts), None, [order[t] for t in verts])
    else:
        for arc in (first, second):
            run("star_family", _ordered_sub(G, arc), None, [order[t] for t in arc])
    return report
