"""Covering convex polygons and 3D polytopes by parallelograms / parallelotopes.

The 2D routine cuts by vertical lines at every vertex and covers each
trapezoid with one parallelogram plus a triangle, and each triangle with its
three corner parallelograms. The 3D routine follows four steps: slanted prisms
from vertical cuts through edges, a 2D decomposition of each prism's shadow,
a single slanted cut producing parallel top/bottom edges, and an extrusion of
a covered vertical facet along the parallel edge.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .geometry import (
    DegenerateInput, GeometryError, Halfspace, Parallelotope, Polytope, Vec,
    add, convex_hull, cross, direction_key, dot, is_convex_polygon, orientation,
    polygon_area2, primitive, rank, scale, sub, vec,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# --- 2D --------------------------------------------------------------------

def _clean_polygon(P: Sequence) -> list[Vec]:
    pts = [vec(p) for p in P]
    if len(pts) < 3:
        raise DegenerateInput("polygon needs at least 3 vertices")
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise DegenerateInput("polygon is degenerate (collinear)")
    if len(hull) != len(set(pts)):
        raise DegenerateInput("polygon is not strictly convex")
    return hull


def _vertical_extent(poly: Sequence[Vec], x) -> tuple[Fraction, Fraction]:
    """Lowest and highest y of the convex polygon on the vertical line at x."""
    ys = []
    n = len(poly)
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        if x1 == x2:
            if x1 == x:
                ys += [y1, y2]
        elif min(x1, x2) <= x <= max(x1, x2):
            ys.append(y1 + (x - x1) * (y2 - y1) / (x2 - x1))
    return min(ys), max(ys)


def vertical_cells(P: Sequence) -> list[list[Vec]]:
    """Cut a convex polygon by vertical lines through its vertices.

    Each cell is returned counterclockwise: trapezoids as
    ``[(x0,lo0), (x1,lo1), (x1,hi1), (x0,hi0)]`` and triangles with the
    repeated vertex removed.
    """
    poly = _clean_polygon(P)
    xs = sorted({p[0] for p in poly})
    cells = []
    for x0, x1 in zip(xs, xs[1:]):
        lo0, hi0 = _vertical_extent(poly, x0)
        lo1, hi1 = _vertical_extent(poly, x1)
        pts = [(x0, lo0), (x1, lo1), (x1, hi1), (x0, hi0)]
        dedup = [p for i, p in enumerate(pts) if p != pts[i - 1]]
        if len(dedup) >= 3 and polygon_area2(dedup) > 0:
            cells.append(dedup)
    return cells


def parallelogram(base, g1, g2) -> Parallelotope:
    return Parallelotope(vec(base), (vec(g1), vec(g2)))


def cover_triangle(T: Sequence) -> list[Parallelotope]:
    """The three corner parallelograms spanned by each vertex and its adjacent midpoints."""
    a, b, c = (vec(p) for p in T)
    if orientation(a, b, c) == 0:
        raise DegenerateInput("degenerate triangle")
    half = Fraction(1, 2)
    pieces = []
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        pieces.append(parallelogram(x, scale(half, sub(y, x)), scale(half, sub(z, x))))
    return pieces


def split_trapezoid(T: Sequence) -> tuple[Parallelotope, list[Vec] | None]:
    """Split a trapezoid with two vertical sides into a parallelogram and a triangle.

    ``T`` is ``[(x0,lo0), (x1,lo1), (x1,hi1), (x0,hi0)]``; the bottom edge is
    translated upward by the smaller of the two vertical gaps.
    """
    (x0, lo0), (x1, lo1), (x1b, hi1), (x0b, hi0) = (vec(p) for p in T)
    if x0 != x0b or x1 != x1b or x0 == x1:
        raise DegenerateInput("trapezoid needs two vertical sides")
    g0, g1 = hi0 - lo0, hi1 - lo1
    if x0 > x1:
        raise DegenerateInput("trapezoid must be listed counterclockwise")
    if g0 <= 0 or g1 <= 0:
        raise DegenerateInput("trapezoid has a zero-length vertical side")
    g = min(g0, g1)
    para = parallelogram((x0, lo0), (x1 - x0, lo1 - lo0), (ZERO, g))
    if g0 == g1:
        return para, None
    if g1 < g0:
        tri = [(x1, hi1), (x0, hi0), (x0, lo0 + g)]
    else:
        tri = [(x1, lo1 + g), (x1, hi1), (x0, hi0)]
    return para, tri


def decompose_polygon(P: Sequence) -> list[Parallelotope]:
    """Cover a convex polygon with h vertices by at most 4h parallelograms."""
    pieces: list[Parallelotope] = []
    for cell in vertical_cells(P):
        if len(cell) == 3:
            pieces += cover_triangle(cell)
            continue
        para, tri = split_trapezoid(cell)
        pieces.append(para)
        if tri is not None:
            pieces += cover_triangle(tri)
    return pieces


def piece_sides_ok(P: Sequence, pieces: Iterable[Parallelotope]) -> bool:
    """Every piece side is vertical or parallel to a side of ``P``."""
    poly = _clean_polygon(P)
    allowed = {direction_key((ZERO, ONE))}
    for i in range(len(poly)):
        allowed.add(direction_key(sub(poly[(i + 1) % len(poly)], poly[i])))
    return all(direction_key(g) in allowed for pc in pieces for g in pc.generators)


# --- exact integer-scaled membership (fast sampling checks) ----------------

def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


class _IntRows:
    """Rows ``lo <= N.X <= hi`` in integers for points ``X / D`` (D fixed)."""

    __slots__ = ("rows", "box")

    def __init__(self, rows, box):
        self.rows = rows
        self.box = box

    @classmethod
    def for_parallelotope(cls, pc: Parallelotope, D: int) -> "_IntRows":
        rows = []
        for n, nb, w in pc._planes:
            N = primitive(n)
            k = next(Fraction(a) / b for a, b in zip(n, N) if b != 0)
            rows.append((N, _ceil(D * nb / k), _floor(D * (nb + w) / k)))
        verts = pc.vertices()
        d = pc.dim
        box = tuple((_ceil(D * min(v[i] for v in verts)), _floor(D * max(v[i] for v in verts)))
                    for i in range(d))
        return cls(rows, box)

    @classmethod
    def for_halfspaces(cls, hs: Iterable[Halfspace], D: int) -> "_IntRows":
        rows = []
        for h in hs:
            a, b = h.as_le()
            N = primitive(a)
            k = next(Fraction(x) / y for x, y in zip(a, N) if y != 0)
            rows.append((N, None, _floor(D * b / k)))
        return cls(rows, None)

    def contains(self, X) -> bool:
        if self.box is not None:
            for (lo, hi), x in zip(self.box, X):
                if x < lo or x > hi:
                    return False
        for N, lo, hi in self.rows:
            s = sum(a * x for a, x in zip(N, X))
            if s > hi or (lo is not None and s < lo):
                return False
        return True


def _sample_grid(box_lo, box_hi, bits: int):
    den = 1
    for q in list(box_lo) + list(box_hi):
        den = den * q.denominator // math.gcd(den, q.denominator)
    D = den << bits
    ranges = [(_ceil(lo * D), _floor(hi * D)) for lo, hi in zip(box_lo, box_hi)]
    return D, ranges


def polygon_halfspaces(P: Sequence) -> list[Halfspace]:
    poly = _clean_polygon(P)
    hs = []
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        e = sub(b, a)
        n = (e[1], -e[0])  # outward for counterclockwise order
        hs.append(Halfspace(n, dot(n, a), "<="))
    return hs


def verify_polygon_cover(P: Sequence, pieces: Sequence[Parallelotope], n_samples: int,
                         seed: int, bits: int = 24) -> int:
    """Number of sampled points of P lying in no piece (exact per point)."""
    poly = _clean_polygon(P)
    lo = tuple(min(p[i] for p in poly) for i in range(2))
    hi = tuple(max(p[i] for p in poly) for i in range(2))
    return _count_misses(polygon_halfspaces(poly), lo, hi, pieces, n_samples, seed, bits)


def _count_misses(hs, lo, hi, pieces, n_samples, seed, bits) -> int:
    rng = random.Random(seed)
    D, ranges = _sample_grid(lo, hi, bits)
    region = _IntRows.for_halfspaces(hs, D)
    compiled = [_IntRows.for_parallelotope(pc, D) for pc in pieces]
    misses = taken = tries = 0
    last = 0
    while taken < n_samples and tries < 200 * n_samples:
        tries += 1
        X = tuple(rng.randint(a, b) for a, b in ranges)
        if not region.contains(X):
            continue
        taken += 1
        if compiled and compiled[last].contains(X):
            continue
        for i, c in enumerate(compiled):
            if c.contains(X):
                last = i
                break
        else:
            misses += 1
    return misses


# --- 3D: planes and prisms -------------------------------------------------

@dataclass(frozen=True)
class Plane:
    """Non-vertical plane ``z = alpha x + beta y + gamma``."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    @classmethod
    def from_halfspace_row(cls, a: Vec, b) -> "Plane":
        if a[2] == 0:
            raise GeometryError("vertical constraint has no plane form")
        return cls(-a[0] / a[2], -a[1] / a[2], Fraction(b) / a[2])

    def at(self, p) -> Fraction:
        return self.alpha * p[0] + self.beta * p[1] + self.gamma

    def slope(self, w) -> Fraction:
        return self.alpha * w[0] + self.beta * w[1]

    def lift(self, p) -> Vec:
        return (p[0], p[1], self.at(p))

    def lift_vector(self, w) -> Vec:
        return (w[0], w[1], self.slope(w))

    def normal(self) -> Vec:
        return (-self.alpha, -self.beta, ONE)


@dataclass(frozen=True)
class SlantedPrism:
    """``{(p, z) : p in base, lower(p) <= z <= upper(p)}`` over a convex polygon base."""

    base: tuple
    lower: Plane
    upper: Plane

    def to_polytope(self) -> Polytope:
        hs = [Halfspace(self.upper.normal(), self.upper.gamma, "<="),
              Halfspace(self.lower.normal(), self.lower.gamma, ">=")]
        for h in polygon_halfspaces(self.base):
            hs.append(Halfspace((h.normal[0], h.normal[1], ZERO), h.offset, "<="))
        return Polytope(hs)

    def classify_facets(self) -> dict[str, int]:
        """Count facets by the sign of their (outward) normal's last coordinate."""
        counts = {"top": 0, "bottom": 0, "vertical": 0}
        for h, _ in self.to_polytope().facets():
            a, _ = h.as_le()
            counts["top" if a[2] > 0 else "bottom" if a[2] < 0 else "vertical"] += 1
        return counts

    def is_valid(self) -> bool:
        c = self.classify_facets()
        return c["top"] == 1 and c["bottom"] == 1


@dataclass(frozen=True)
class PrismWithBase:
    """Slanted prism over the parallelogram ``corner + s w1 + t w2``, s, t in [0, 1]."""

    corner: Vec
    w1: Vec
    w2: Vec
    lower: Plane
    upper: Plane

    def base_point(self, s, t) -> Vec:
        return add(add(self.corner, scale(s, self.w1)), scale(t, self.w2))

    def base_corners(self) -> list[Vec]:
        return [self.base_point(s, t) for s in (0, 1) for t in (0, 1)]

    def gap(self, p) -> Fraction:
        return self.upper.at(p) - self.lower.at(p)

    @property
    def x_minus(self) -> Vec:
        return self.lower.lift(self.corner)

    @property
    def x_plus(self) -> Vec:
        return self.upper.lift(self.corner)

    def v_minus(self, i: int) -> Vec:
        return self.lower.lift_vector(self.w1 if i == 1 else self.w2)

    def v_plus(self, i: int) -> Vec:
        return self.upper.lift_vector(self.w1 if i == 1 else self.w2)

    def parallel_index(self) -> int | None:
        for i in (1, 2):
            if self.v_minus(i) == self.v_plus(i):
                return i
        return None

    def is_degenerate(self) -> bool:
        return all(self.gap(p) == 0 for p in self.base_corners())

    def rebased(self) -> "PrismWithBase":
        """Same prism with the corner moved to the closest top/bottom vertex pair.

        Ties are broken by the lexicographically smallest projection.
        """
        best = None
        for s in (0, 1):
            for t in (0, 1):
                p = self.base_point(s, t)
                key = (self.gap(p), p)
                if best is None or key < best[0]:
                    w1 = self.w1 if s == 0 else scale(-1, self.w1)
                    w2 = self.w2 if t == 0 else scale(-1, self.w2)
                    best = (key, p, w1, w2)
        _, p, w1, w2 = best
        return PrismWithBase(p, w1, w2, self.lower, self.upper)

    def contains(self, q: Vec) -> bool:
        m = [[self.w1[0], self.w2[0]], [self.w1[1], self.w2[1]]]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        dx, dy = q[0] - self.corner[0], q[1] - self.corner[1]
        s = (dx * m[1][1] - dy * m[0][1]) / det
        t = (m[0][0] * dy - m[1][0] * dx) / det
        if not (0 <= s <= 1 and 0 <= t <= 1):
            return False
        return self.lower.at(q) <= q[2] <= self.upper.at(q)


def _plane_through(point2, z0, w1, s1, w2, s2) -> Plane:
    """Plane with value z0 at point2 and slopes s1, s2 along w1, w2."""
    det = w1[0] * w2[1] - w1[1] * w2[0]
    alpha = (s1 * w2[1] - s2 * w1[1]) / det
    beta = (w1[0] * s2 - w2[0] * s1) / det
    gamma = z0 - alpha * point2[0] - beta * point2[1]
    return Plane(alpha, beta, gamma)


def cut_plane(P: PrismWithBase) -> Plane:
    """Plane through x+ spanned by v1- and v2+ (P must already be rebased)."""
    return _plane_through(P.corner, P.upper.at(P.corner),
                          P.w1, P.lower.slope(P.w1), P.w2, P.upper.slope(P.w2))


def cut_cross_section(P: PrismWithBase) -> tuple[Vec, Vec, Vec]:
    """The cut plane's intersection with P as ``(x+, v1-, v2+)``: a parallelogram in R^3."""
    P = P.rebased()
    return (P.x_plus, P.v_minus(1), P.v_plus(2))


def step3_split(P: PrismWithBase) -> list[PrismWithBase]:
    """Split into at most two prisms, each with a pair of parallel top/bottom edges."""
    P = P.rebased()
    if P.parallel_index() is not None:
        return [P]
    h = cut_plane(P)
    out = []
    for cell in (PrismWithBase(P.corner, P.w1, P.w2, P.lower, h),
                 PrismWithBase(P.corner, P.w1, P.w2, h, P.upper)):
        for q in cell.base_corners():
            if cell.lower.at(q) > cell.upper.at(q):
                raise AssertionError("cut plane left the prism")
        if not cell.is_degenerate():
            out.append(cell)
    return out


def step4_extrude(P: PrismWithBase) -> list[Parallelotope]:
    """Cover the vertical facet along the non-parallel generator, then extrude."""
    i = P.parallel_index()
    if i is None:
        raise GeometryError("prism has no parallel edges")
    wi, wj = (P.w1, P.w2) if i == 1 else (P.w2, P.w1)
    vi = P.lower.lift_vector(wi)
    p = P.corner
    q = add(p, wj)
    face = [(ZERO, P.lower.at(p)), (ONE, P.lower.at(q)),
            (ONE, P.upper.at(q)), (ZERO, P.upper.at(p))]
    face = [pt for k, pt in enumerate(face) if pt != face[k - 1]]
    if len(face) < 3 or polygon_area2(face) == 0:
        return []
    pieces = []
    for pc in decompose_polygon(face):
        (t0, z0) = pc.base
        base3 = (p[0] + t0 * wj[0], p[1] + t0 * wj[1], z0)
        gens = tuple((a * wj[0], a * wj[1], b) for a, b in pc.generators)
        pieces.append(Parallelotope(base3, gens + (vi,)))
    return pieces


# --- 3D: step 1 ------------------------------------------------------------

def _le_rows(Q: Polytope) -> list[tuple[Vec, Fraction]]:
    return [h.as_le() for h in Q.halfspaces]


def polytope_edges(Q: Polytope) -> list[tuple[Vec, Vec]]:
    rows = _le_rows(Q)
    verts = Q.vertices
    tight = [frozenset(i for i, (a, b) in enumerate(rows) if dot(a, v) == b) for v in verts]
    edges = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        common = tight[i] & tight[j]
        if len(common) >= 2 and rank([rows[k][0] for k in common]) == 2:
            edges.append((verts[i], verts[j]))
    return edges


def _split_polygon(poly: list[Vec], line) -> list[list[Vec]]:
    a, b, c = line
    vals = [a * p[0] + b * p[1] - c for p in poly]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [poly]
    neg, pos = [], []
    n = len(poly)
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        vp, vq = vals[k], vals[(k + 1) % n]
        if vp <= 0:
            neg.append(p)
        if vp >= 0:
            pos.append(p)
        if vp * vq < 0:
            t = vp / (vp - vq)
            x = add(p, scale(t, sub(q, p)))
            neg.append(x)
            pos.append(x)
    out = []
    for part in (neg, pos):
        hull = convex_hull(part)
        if len(hull) >= 3:
            out.append(hull)
    return out


def _line_key(p: Vec, q: Vec):
    a, b = q[1] - p[1], p[0] - q[0]
    c = a * p[0] + b * p[1]
    ints = primitive((a, b, c)) if (a, b) != (0, 0) else None
    if ints is None:
        return None
    if (ints[0], ints[1]) < (0, 0):
        ints = tuple(-x for x in ints)
    return tuple(Fraction(x) for x in ints)


def shadow(Q: Polytope) -> list[Vec]:
    return convex_hull({(v[0], v[1]) for v in Q.vertices})


def step1_prisms(Q: Polytope) -> list[SlantedPrism]:
    """Slanted prisms cut out by the vertical planes through the edges of Q."""
    if Q.dim != 3:
        raise GeometryError("step1_prisms works in R^3")
    base = shadow(Q)
    if len(base) < 3:
        raise DegenerateInput("polytope has a degenerate shadow")
    lines = set()
    for u, v in polytope_edges(Q):
        key = _line_key((u[0], u[1]), (v[0], v[1]))
        if key is not None:
            lines.add(key)
    cells = [base]
    for line in sorted(lines):
        cells = [piece for cell in cells for piece in _split_polygon(cell, line)]
    rows = _le_rows(Q)
    uppers = [Plane.from_halfspace_row(a, b) for a, b in rows if a[2] > 0]
    lowers = [Plane.from_halfspace_row(a, b) for a, b in rows if a[2] < 0]
    if not uppers or not lowers:
        raise DegenerateInput("polytope has no top or bottom facet")
    prisms = []
    for cell in cells:
        cx = sum(p[0] for p in cell) / len(cell)
        cy = sum(p[1] for p in cell) / len(cell)
        up = min(uppers, key=lambda pl: (pl.at((cx, cy)), pl.alpha, pl.beta))
        lo = max(lowers, key=lambda pl: (pl.at((cx, cy)), -pl.alpha, -pl.beta))
        prisms.append(SlantedPrism(tuple(cell), lo, up))
    return prisms


def step2_parallelogram_prisms(prism: SlantedPrism) -> list[PrismWithBase]:
    out = []
    for pc in decompose_polygon(prism.base):
        w1, w2 = pc.generators
        out.append(PrismWithBase(pc.base, w1, w2, prism.lower, prism.upper))
    return out


# --- direction sets ---------------------------------------------------------

class DirectionSet(frozenset):
    """Canonical integer directions (sign and scale removed)."""

    @classmethod
    def of(cls, vectors: Iterable[Vec]) -> "DirectionSet":
        return cls(direction_key(v) for v in vectors if any(x != 0 for x in v))

    def __contains__(self, item) -> bool:
        if item and not isinstance(item[0], int):
            item = direction_key(item)
        return frozenset.__contains__(self, item)


_DIRECTION_CACHE: dict[frozenset, DirectionSet] = {}


def _normals_key(H: Iterable) -> frozenset:
    out = set()
    for h in H:
        n = h.normal if isinstance(h, Halfspace) else vec(h)
        out.add(direction_key(n))
    return frozenset(out)


def generator_directions(H: Iterable) -> list[Vec]:
    """The vectors that can appear as piece generators for any Q in POL(H)."""
    normals = [tuple(Fraction(x) for x in k) for k in sorted(_normals_key(H))]
    edge_dirs = [cross(a, b) for a, b in itertools.combinations(normals, 2)]
    W = {direction_key((ZERO, ONE))}
    for e in edge_dirs:
        if (e[0], e[1]) != (0, 0):
            W.add(direction_key((e[0], e[1])))
    for n in normals:
        if n[2] == 0:
            W.add(direction_key((-n[1], n[0])))
    nonvertical = [n for n in normals if n[2] != 0]
    gens = {direction_key((ZERO, ZERO, ONE))}
    for w in W:
        for n in nonvertical:
            s = -(n[0] * w[0] + n[1] * w[1]) / n[2]
            gens.add(direction_key((Fraction(w[0]), Fraction(w[1]), s)))
    return [tuple(Fraction(x) for x in g) for g in sorted(gens)]


def direction_set(H: Iterable) -> DirectionSet:
    """Facet directions available to pieces of any Q in POL(H); depends on H only."""
    key = _normals_key(H)
    cached = _DIRECTION_CACHE.get(key)
    if cached is not None:
        return cached
    gens = generator_directions([tuple(Fraction(x) for x in k) for k in key])
    ds = DirectionSet.of(cross(a, b) for a, b in itertools.combinations(gens, 2))
    _DIRECTION_CACHE[key] = ds
    return ds


# --- 3D driver and verification --------------------------------------------

class Decomposition(NamedTuple):
    pieces: list
    directions: DirectionSet
    n_prisms: int
    n_base_prisms: int
    n_split_prisms: int


def check_in_pol(Q: Polytope, H: Iterable) -> None:
    allowed = _normals_key(H)
    for h, _ in Q.facets():
        if direction_key(h.normal) not in allowed:
            raise GeometryError(f"facet normal {h.normal} is not parallel to any member of H")


def decompose_polytope(Q: Polytope, H: Iterable) -> Decomposition:
    """Cover a bounded 3D polytope in POL(H) by parallelotopes."""
    H = list(H)
    if not Q.is_bounded:
        raise GeometryError("polytope is unbounded; intersect it with a bounding box first")
    check_in_pol(Q, H)
    prisms = step1_prisms(Q)
    base_prisms = [bp for pr in prisms for bp in step2_parallelogram_prisms(pr)]
    split = [c for bp in base_prisms for c in step3_split(bp)]
    pieces = [pc for c in split for pc in step4_extrude(c)]
    return Decomposition(pieces, direction_set(H), len(prisms), len(base_prisms), len(split))


def piece_directions_ok(pieces: Iterable[Parallelotope], ds: DirectionSet) -> bool:
    return all(k in ds for pc in pieces for k in pc.facet_directions())


class CoverCheck(NamedTuple):
    misses: int
    leaks: int


def verify_cover(Q: Polytope, pieces: Sequence[Parallelotope], n_samples: int, seed: int,
                 bits: int = 24) -> CoverCheck:
    """Sampled points of Q in no piece (misses) and sampled piece points outside Q (leaks)."""
    box = Q.bounding_box()
    misses = _count_misses(Q.halfspaces, box.lo, box.hi, pieces, n_samples, seed, bits)
    rng = random.Random(seed ^ 0x5EED)
    leaks = 0
    if pieces:
        for k in range(n_samples):
            pc = pieces[k % len(pieces)]
            if not Q.contains(pc.sample(rng)):
                leaks += 1
    return CoverCheck(misses, leaks)


def random_halfspace_family(h: int, seed: int, coord: int = 3) -> list[Halfspace]:
    """h distinct primitive integer normals that positively span R^3."""
    rng = random.Random(seed)
    while True:
        normals = set()
        while len(normals) < h:
            n = tuple(rng.randint(-coord, coord) for _ in range(3))
            if n != (0, 0, 0):
                normals.add(primitive(tuple(map(Fraction, n))))
        normals = sorted(normals)
        if not (any(n[2] > 0 for n in normals) and any(n[2] < 0 for n in normals)):
            continue
        if Polytope([Halfspace(n, 1) for n in normals]).is_bounded:
            return [Halfspace(n, 0) for n in normals]


def random_pol_polytope(H: Sequence[Halfspace], seed: int, max_tries: int = 500) -> Polytope:
    """A bounded polytope whose constraints are translates of the members of H."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        hs = [Halfspace(h.normal, Fraction(rng.randint(1, 12), rng.randint(1, 3)), "<=")
              for h in H]
        Q = Polytope(hs)
        if not Q.is_bounded:
            continue
        try:
            verts = Q.vertices
        except GeometryError:
            continue
        if len(verts) >= 4 and rank([sub(v, verts[0]) for v in verts[1:]]) == 3:
            return Q
    raise GeometryError("could not sample a bounded full-dimensional polytope from H")
