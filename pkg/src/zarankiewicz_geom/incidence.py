"""Incidence and intersection graphs, semilinear relations, and the box reduction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .decomp import decompose_polytope
from .geometry import (
    Box, DimensionMismatch, GeometryError, Halfspace, Parallelotope, Polytope, Vec,
    contains, direction_key, dot, primitive, segments_intersect, vec,
)
from .graph import BipartiteGraph, find_biclique

Coeff = tuple  # (alpha: Vec, beta: Vec, gamma: Fraction)


def build_segment_graph(vsegs: Sequence, hsegs: Sequence) -> BipartiteGraph:
    """Class A: vertical segments, class B: horizontal segments; edge iff they meet."""
    pairs = [(i, j) for i, v in enumerate(vsegs) for j, h in enumerate(hsegs)
             if segments_intersect(h, v) is not None]
    return BipartiteGraph.from_biadjacency(len(vsegs), len(hsegs), pairs)


def build_incidence_graph(points: Sequence, ranges: Sequence) -> BipartiteGraph:
    """Class A: points, class B: ranges; edge iff the (closed) range contains the point."""
    kinds = {type(r) for r in ranges}
    if len(kinds) > 1:
        raise GeometryError("ranges must be of one kind")
    pts = [vec(p) for p in points]
    pairs = [(i, j) for i, p in enumerate(pts) for j, r in enumerate(ranges) if contains(r, p)]
    return BipartiteGraph.from_biadjacency(len(pts), len(ranges), pairs)


# --- semilinear relations ---------------------------------------------------

@dataclass(frozen=True)
class SemilinearSpec:
    """Edge iff OR over j of AND over i of ``alpha.x + beta.y + gamma <= 0``.

    ``coeffs[j][i]`` is the triple for inequality i of conjunction j.
    """

    dx: int
    dy: int
    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple((vec(a), vec(b), Fraction(g)) for a, b, g in conj)
                     for conj in self.coeffs)
        object.__setattr__(self, "coeffs", rows)
        if not rows or len({len(c) for c in rows}) != 1 or not rows[0]:
            raise ValueError("need t >= 1 conjunctions of the same length h >= 1")
        for conj in rows:
            for a, b, _ in conj:
                if len(a) != self.dx or len(b) != self.dy:
                    raise DimensionMismatch("coefficient dimensions do not match (dx, dy)")

    @property
    def t(self) -> int:
        return len(self.coeffs)

    @property
    def h(self) -> int:
        return len(self.coeffs[0])

    def conjunction(self, j: int, x: Vec, y: Vec) -> bool:
        return all(dot(a, x) + dot(b, y) + g <= 0 for a, b, g in self.coeffs[j])

    def holds(self, x: Vec, y: Vec) -> bool:
        return any(self.conjunction(j, x, y) for j in range(self.t))


def interval_spec() -> SemilinearSpec:
    """x = (l, r), y = (p,): p in [l, r]."""
    return SemilinearSpec(2, 1, (((( 1, 0), (-1,), 0), ((0, -1), (1,), 0)),))


def corner_spec(d: int) -> SemilinearSpec:
    """x = b (corner apex), y = point: y in (-inf, b_1] x ... x (-inf, b_d]."""
    conj = []
    for i in range(d):
        a = tuple(-1 if k == i else 0 for k in range(d))
        b = tuple(1 if k == i else 0 for k in range(d))
        conj.append((a, b, 0))
    return SemilinearSpec(d, d, (tuple(conj),))


def box_spec(d: int) -> SemilinearSpec:
    """x = point in R^d, y = (lo, hi) in R^2d: x in the box."""
    conj = []
    for i in range(d):
        e = tuple(1 if k == i else 0 for k in range(d))
        neg = tuple(-v for v in e)
        zero = (0,) * d
        conj.append((neg, e + zero, 0))   # lo_i - x_i <= 0
        conj.append((e, zero + neg, 0))   # x_i - hi_i <= 0
    return SemilinearSpec(d, 2 * d, (tuple(conj),))


def semilinear_graph(spec: SemilinearSpec, X: Sequence, Y: Sequence) -> BipartiteGraph:
    X = [vec(x) for x in X]
    Y = [vec(y) for y in Y]
    pairs = [(i, j) for i, x in enumerate(X) for j, y in enumerate(Y) if spec.holds(x, y)]
    return BipartiteGraph.from_biadjacency(len(X), len(Y), pairs)


def conjunction_graph(spec: SemilinearSpec, j: int, X: Sequence, Y: Sequence) -> BipartiteGraph:
    X = [vec(x) for x in X]
    Y = [vec(y) for y in Y]
    pairs = [(i, k) for i, x in enumerate(X) for k, y in enumerate(Y) if spec.conjunction(j, x, y)]
    return BipartiteGraph.from_biadjacency(len(X), len(Y), pairs)


def choose_j0(spec: SemilinearSpec, X: Sequence, Y: Sequence) -> int:
    """Index of the conjunction with the most edges (lowest index on ties)."""
    counts = [conjunction_graph(spec, j, X, Y).m for j in range(spec.t)]
    return max(range(spec.t), key=lambda j: (counts[j], -j))


def semilinear_to_polytopes(spec: SemilinearSpec, j0: int, X: Sequence) -> list[Polytope]:
    """P_x = {y : f_{i,j0}(x, y) <= 0 for all i} for every x in X."""
    out = []
    for x in X:
        x = vec(x)
        hs = []
        empty = False
        for a, b, g in spec.coeffs[j0]:
            rhs = -dot(a, x) - g
            if all(v == 0 for v in b):
                if rhs < 0:
                    empty = True
                continue
            hs.append(Halfspace(b, rhs, "<="))
        if empty:
            e = tuple(Fraction(int(k == 0)) for k in range(spec.dy))
            hs = [Halfspace(e, 0, "<="), Halfspace(e, 1, ">=")]
        out.append(Polytope(hs, dim=spec.dy))
    return out


# --- randomized reduction to boxes -----------------------------------------

Type = tuple  # sorted tuple of three canonical integer directions


def piece_type(pc: Parallelotope) -> Type:
    return tuple(sorted(pc.facet_directions()))


def type_map(alpha: Type) -> list[Vec]:
    """Rows of the linear map sending the type's facet normals to the coordinate axes."""
    return [tuple(Fraction(x) for x in n) for n in alpha]


def apply_map(M: Sequence[Vec], p: Vec) -> Vec:
    return tuple(dot(row, p) for row in M)


def piece_box(pc: Parallelotope, alpha: Type) -> Box:
    """Image of a type-alpha piece under the type map, as an axis box."""
    lo, hi = [], []
    for N in alpha:
        Nv = tuple(Fraction(x) for x in N)
        for n, nb, w in pc._planes:
            if direction_key(n) == N:
                k = next(Fraction(a) / b for a, b in zip(n, Nv) if b != 0)
                a_, b_ = nb / k, (nb + w) / k
                lo.append(min(a_, b_))
                hi.append(max(a_, b_))
                break
        else:
            raise GeometryError("piece is not of the requested type")
    return Box(tuple(lo), tuple(hi))


def is_axis_box_image(pc: Parallelotope, M: Sequence[Vec], box: Box) -> bool:
    """The mapped piece has axis-parallel facets and its vertices span exactly ``box``."""
    image = Parallelotope(apply_map(M, pc.base), tuple(apply_map(M, g) for g in pc.generators))
    axes = {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    if not image.facet_directions() <= axes:
        return False
    verts = image.vertices()
    lo = tuple(min(v[i] for v in verts) for i in range(3))
    hi = tuple(max(v[i] for v in verts) for i in range(3))
    return lo == box.lo and hi == box.hi


@dataclass
class PreparedReduction:
    points: list
    polytopes: list
    pieces: list  # per polytope
    types: list  # realized types, sorted
    graph: BipartiteGraph

    @property
    def A(self) -> int:
        return max(len(p) for p in self.pieces)

    @property
    def B(self) -> int:
        return len(self.types)

    def exact_survival(self) -> dict[tuple[int, int], Fraction]:
        """Probability that each edge (point, polytope) of G survives one draw."""
        out = {}
        for i, j in self._edges():
            cover = sum(1 for pc in self.pieces[j] if pc.contains(self.points[i]))
            out[(i, j)] = Fraction(cover, self.B * len(self.pieces[j]))
        return out

    def _edges(self):
        na = len(self.points)
        return [(a, b - na) for a, b in self.graph.edges()]


class ReductionResult(NamedTuple):
    alpha: Type
    chosen: list  # piece index per polytope
    kept: list  # polytope indices whose chosen piece has type alpha
    boxes: dict  # polytope index -> Box
    points: list  # mapped points
    edges: list  # surviving (point, polytope) edges
    all_boxes_ok: bool


def prepare_reduction(points: Sequence, polytopes: Sequence[Polytope], H: Iterable) -> PreparedReduction:
    H = list(H)
    pts = [vec(p) for p in points]
    pieces = []
    for Q in polytopes:
        if not Q.is_bounded:
            raise GeometryError("unbounded polytope")
        pieces.append(decompose_polytope(Q, H).pieces)
    types = sorted({piece_type(pc) for ps in pieces for pc in ps})
    G = build_incidence_graph(pts, list(polytopes))
    return PreparedReduction(pts, list(polytopes), pieces, types, G)


def reduction_trial(prep: PreparedReduction, rng: random.Random) -> ReductionResult:
    alpha = prep.types[rng.randrange(len(prep.types))]
    chosen = [rng.randrange(len(ps)) for ps in prep.pieces]
    M = type_map(alpha)
    kept = [j for j, c in enumerate(chosen) if piece_type(prep.pieces[j][c]) == alpha]
    boxes = {}
    ok = True
    for j in kept:
        pc = prep.pieces[j][chosen[j]]
        box = piece_box(pc, alpha)
        boxes[j] = box
        ok = ok and is_axis_box_image(pc, M, box)
    mapped = [apply_map(M, p) for p in prep.points]
    edges = []
    for j in kept:
        for i, q in enumerate(mapped):
            if boxes[j].contains(q):
                edges.append((i, j))
    return ReductionResult(alpha, chosen, kept, boxes, mapped, edges, ok)


def reduce_to_boxes(points: Sequence, polytopes: Sequence[Polytope], H: Iterable, seed: int
                    ) -> tuple[PreparedReduction, ReductionResult]:
    """One random draw of a type and one piece per polytope, mapped to axis boxes."""
    prep = prepare_reduction(points, polytopes, H)
    return prep, reduction_trial(prep, random.Random(seed))


# --- reporting ---------------------------------------------------------------

REPORT_COLUMNS = ["n", "e", "s", "kss_free"]


def zarankiewicz_report(G: BipartiteGraph, s_max: int, cap: int = 10**6) -> list[dict]:
    rows = []
    for s in range(1, s_max + 1):
        w = find_biclique(G, s, cap=cap)
        rows.append({"n": G.n, "e": G.m, "s": s, "kss_free": w is None,
                     "witness": None if w is None else [list(w.S), list(w.T)],
                     "e_over_n": Fraction(G.m, G.n) if G.n else Fraction(0)})
    return rows
