"""Instance generators: the tiling / ellipse construction and random scenes."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import (
    Box, Ellipse, HSeg, VSeg, Vec, convex_hull, lift_ellipse, lift_point, orientation,
    point_in_polygon, polygon_area2, proper_crossing,
)
from .graph import BipartiteGraph, find_C4

MAX_TILES = 10**6


@dataclass(frozen=True)
class TilingParams:
    u: int
    k: int

    def __post_init__(self):
        if self.u < 2 or self.k < 1:
            raise ValueError("need u >= 2 and k >= 1")
        if self.u ** self.k > MAX_TILES:
            raise OverflowError(f"u^k = {self.u ** self.k} exceeds {MAX_TILES}")

    @property
    def m(self) -> int:
        return self.u ** self.k

    @property
    def n(self) -> int:
        return self.k * self.m

    @property
    def theta(self) -> Fraction:
        return Fraction(1, self.u * self.m)

    @classmethod
    def preset(cls, n_target: int) -> "TilingParams":
        """Integer (u, k) closest to u = (log m)^4 with k m near ``n_target``."""
        best = None
        for u in range(2, 64):
            for k in range(1, 12):
                if u ** k > MAX_TILES:
                    break
                m = u ** k
                ideal = max(2.0, math.log(m) ** 4)
                score = (abs(math.log(k * m / n_target)), abs(math.log(u / ideal)))
                if best is None or score < best[0]:
                    best = (score, cls(u, k))
        return best[1]


class Rect(NamedTuple):
    layer: int
    col: int
    row: int
    box: Box


def chazelle_rectangles(u: int, k: int) -> list[Rect]:
    """For each layer i = 1..k, the tiling of the unit square by u^-i x u^-(k-i) rectangles."""
    TilingParams(u, k)
    out = []
    for i in range(1, k + 1):
        cols, rows = u ** i, u ** (k - i)
        for c in range(cols):
            for r in range(rows):
                out.append(Rect(i, c, r, Box((Fraction(c, cols), Fraction(r, rows)),
                                             (Fraction(c + 1, cols), Fraction(r + 1, rows)))))
    return out


def inscribed_ellipse(box: Box) -> Ellipse:
    (p, r), (q, s) = box.lo, box.hi
    if q <= p or s <= r:
        raise ValueError("degenerate rectangle")
    return Ellipse((2 / (q - p)) ** 2, (2 / (s - r)) ** 2, ((p + q) / 2, (r + s) / 2))


def inscribed_ellipses(rects: Sequence) -> list[Ellipse]:
    return [inscribed_ellipse(r.box if isinstance(r, Rect) else r) for r in rects]


def overlap_area(a: Box, b: Box) -> Fraction:
    w = min(a.hi[0], b.hi[0]) - max(a.lo[0], b.lo[0])
    h = min(a.hi[1], b.hi[1]) - max(a.lo[1], b.lo[1])
    return w * h if w > 0 and h > 0 else Fraction(0)


# --- points and close pairs -------------------------------------------------

def sample_grid_points(count: int, seed: int, bits: int = 40) -> list[tuple[int, int]]:
    """``count`` points of the dyadic grid in [0,1)^2, as integer numerators over 2^bits."""
    rng = random.Random(seed)
    return [(rng.getrandbits(bits), rng.getrandbits(bits)) for _ in range(count)]


def close_pairs(P: Sequence[tuple[int, int]], theta: Fraction, bits: int = 40
                ) -> list[tuple[int, int]]:
    """Index pairs whose spanned rectangle has area at most theta (exact)."""
    n = len(P)
    if n < 2:
        return []
    scale = 1 << (2 * bits)
    # |dX| |dY| <= theta * 2^(2 bits), i.e. den * |dX| |dY| <= num * 2^(2 bits)
    num, den = theta.numerator, theta.denominator
    xs = np.array([p[0] for p in P], dtype=np.float64)
    ys = np.array([p[1] for p in P], dtype=np.float64)
    limit = float(theta) * scale * (1 + 1e-6)
    out = []
    for i in range(n - 1):
        prod = np.abs(xs[i + 1:] - xs[i]) * np.abs(ys[i + 1:] - ys[i])
        for j in np.nonzero(prod <= limit)[0]:
            j = i + 1 + int(j)
            dx = abs(P[i][0] - P[j][0])
            dy = abs(P[i][1] - P[j][1])
            if den * dx * dy <= num * scale:
                out.append((i, j))
    return out


def remove_close_pairs(P: Sequence[tuple[int, int]], theta: Fraction, bits: int = 40
                       ) -> list[int]:
    """Indices of the points kept after a greedy max-degree cover of the close-pair graph."""
    pairs = close_pairs(P, theta, bits)
    nb: dict[int, set[int]] = {}
    for i, j in pairs:
        nb.setdefault(i, set()).add(j)
        nb.setdefault(j, set()).add(i)
    removed = set()
    while nb:
        v = max(nb, key=lambda x: (len(nb[x]), -x))
        removed.add(v)
        for u in nb.pop(v):
            nb[u].discard(v)
            if not nb[u]:
                del nb[u]
    return [i for i in range(len(P)) if i not in removed]


# --- incidences ------------------------------------------------------------

def grid_incidences(P: Sequence[tuple[int, int]], params: TilingParams, bits: int = 40
                    ) -> list[tuple[int, int]]:
    """(point index, rectangle index) pairs with the point in the inscribed ellipse.

    Rectangle indices follow :func:`chazelle_rectangles`. Only the cells that
    contain the point (including neighbours across shared boundaries) are tested,
    and the ellipse test is done in integers.
    """
    u, k = params.u, params.k
    B = 1 << bits
    offsets = []
    off = 0
    for i in range(1, k + 1):
        offsets.append(off)
        off += u ** i * u ** (k - i)
    out = []
    for idx, (X, Y) in enumerate(P):
        for i in range(1, k + 1):
            cols, rows = u ** i, u ** (k - i)
            cx, rx = divmod(X * cols, B)
            cy, ry = divmod(Y * rows, B)
            ccands = [cx] + ([cx - 1] if rx == 0 and cx > 0 else [])
            rcands = [cy] + ([cy - 1] if ry == 0 and cy > 0 else [])
            for c in ccands:
                if c >= cols:
                    continue
                for r in rcands:
                    if r >= rows:
                        continue
                    t = 2 * X * cols - (2 * c + 1) * B
                    s = 2 * Y * rows - (2 * r + 1) * B
                    if t * t + s * s <= B * B:
                        out.append((idx, offsets[i - 1] + c * rows + r))
    return out


def to_points(P: Sequence[tuple[int, int]], bits: int = 40) -> list[Vec]:
    B = 1 << bits
    return [(Fraction(x, B), Fraction(y, B)) for x, y in P]


def point_ellipse_matrix(points: Sequence[Vec], ellipses: Sequence[Ellipse]) -> list[list[int]]:
    """Exact incidence matrix (rows = points); the x-extent is tested first."""
    out = []
    for p in points:
        row = []
        for e in ellipses:
            dx = p[0] - e.center[0]
            if e.a * dx * dx > 1:
                row.append(0)
                continue
            row.append(int(e.contains(p)))
        out.append(row)
    return out


def halfspace_matrix(points: Sequence[Vec], halfspaces) -> list[list[int]]:
    """Exact point/halfspace incidence matrix using integer-scaled rows."""
    if not points:
        return []
    den = 1
    for p in points:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [tuple(int(x * den) for x in p) for p in points]
    rows = []
    for h in halfspaces:
        a, b = h.as_le()
        hd = 1
        for x in list(a) + [b]:
            hd = hd * x.denominator // math.gcd(hd, x.denominator)
        rows.append((tuple(int(x * hd) for x in a), int(b * hd) * den))
    return [[int(sum(ai * xi for ai, xi in zip(a, X)) <= b) for a, b in rows] for X in ints]


def build_r4_instance(points: Sequence[Vec], ellipses: Sequence[Ellipse]):
    """Lift points with (t, u) -> (t^2, t, u^2, u) and ellipses to 4D halfspaces."""
    return [lift_point(p) for p in points], [lift_ellipse(e) for e in ellipses]


@dataclass
class ConstructionResult:
    params: TilingParams
    seed: int
    bits: int
    points: list  # integer numerators over 2^bits, after removal
    n_sampled: int
    edges: list  # (point index, ellipse index)
    c4_free: bool

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_ellipses(self) -> int:
        return self.params.n

    @property
    def incidences(self) -> int:
        return len(self.edges)

    @property
    def incidences_per_point(self) -> Fraction:
        return Fraction(self.incidences, self.n_points) if self.points else Fraction(0)

    def graph(self) -> BipartiteGraph:
        return BipartiteGraph.from_biadjacency(self.n_points, self.n_ellipses, self.edges)

    def csv_row(self) -> dict:
        return {"u": self.params.u, "k": self.params.k, "seed": self.seed,
                "n_sampled": self.n_sampled, "n_points": self.n_points,
                "n_ellipses": self.n_ellipses, "incidences": self.incidences,
                "incidences_per_point": f"{float(self.incidences_per_point):.6f}",
                "c4_free": self.c4_free}


CSV_COLUMNS = ["u", "k", "seed", "n_sampled", "n_points", "n_ellipses", "incidences",
               "incidences_per_point", "c4_free"]


def run_construction(u: int, k: int, seed: int, bits: int = 40,
                     n_points: int | None = None) -> ConstructionResult:
    """Sample k u^k grid points, drop close pairs, and record the ellipse incidences."""
    params = TilingParams(u, k)
    raw = sample_grid_points(params.n if n_points is None else n_points, seed, bits)
    keep = remove_close_pairs(raw, params.theta, bits)
    pts = [raw[i] for i in keep]
    edges = grid_incidences(pts, params, bits)
    res = ConstructionResult(params, seed, bits, pts, len(raw), edges, False)
    res.c4_free = find_C4(res.graph()) is None
    return res


# --- random scenes -----------------------------------------------------------

@dataclass(frozen=True)
class SceneSpec:
    kind: str
    size: int
    seed: int
    grid_bits: int = 16

    KINDS = ("convex_polygon", "x_monotone_polygon", "star_polygon", "axis_segments")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown scene kind {self.kind!r}")
        if self.kind != "axis_segments" and self.size < 3:
            raise ValueError("polygons need size >= 3")


@dataclass
class Scene:
    kind: str
    polygon: list = field(default_factory=list)  # counterclockwise vertices
    center: tuple | None = None
    hsegs: list = field(default_factory=list)
    vsegs: list = field(default_factory=list)


class SceneError(RuntimeError):
    pass


def _grid(v: float, bits: int) -> Fraction:
    return Fraction(round(v * (1 << bits)), 1 << bits)


def scale_to_int(points: Sequence[Vec]) -> list[tuple[int, int]]:
    """Multiply rational points by the lcm of their denominators."""
    D = 1
    for p in points:
        for x in p:
            D = math.lcm(D, Fraction(x).denominator)
    return [tuple(int(Fraction(x) * D) for x in p) for p in points]


def no_three_collinear(points: Sequence[Vec]) -> bool:
    pts = scale_to_int(points)
    if len(set(pts)) != len(pts):
        return False
    for i, (x0, y0) in enumerate(pts):
        seen = set()
        for x1, y1 in pts[i + 1:]:
            dx, dy = x1 - x0, y1 - y0
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return False
            seen.add((dx, dy))
    return True


def is_simple_polygon(poly: Sequence[Vec]) -> bool:
    n = len(poly)
    if len(set(poly)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            a, b = poly[i], poly[(i + 1) % n]
            c, d = poly[j], poly[(j + 1) % n]
            if proper_crossing(a, b, c, d):
                return False
            # touching (a vertex on a non-adjacent edge) is also excluded
            if any(orientation(a, b, x) == 0 and min(a[0], b[0]) <= x[0] <= max(a[0], b[0])
                   and min(a[1], b[1]) <= x[1] <= max(a[1], b[1]) for x in (c, d)):
                return False
    return polygon_area2(poly) > 0


def is_x_monotone(poly: Sequence[Vec]) -> bool:
    """Every vertical line through an x-midpoint meets the boundary at most twice."""
    xs = sorted({p[0] for p in poly})
    n = len(poly)
    for x0, x1 in zip(xs, xs[1:]):
        x = (x0 + x1) / 2
        hits = sum(1 for i in range(n)
                   if min(poly[i][0], poly[(i + 1) % n][0]) < x < max(poly[i][0], poly[(i + 1) % n][0]))
        if hits > 2:
            return False
    return True


def is_star_center(poly: Sequence[Vec], c: Vec) -> bool:
    """Every edge turns counterclockwise around c, so c sees the whole boundary."""
    n = len(poly)
    return all(orientation(c, poly[i], poly[(i + 1) % n]) > 0 for i in range(n))


def _convex(spec: SceneSpec, rng: random.Random) -> Scene:
    for _ in range(1000):
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(spec.size))
        pts = [(_grid(math.cos(t), spec.grid_bits), _grid(math.sin(t), spec.grid_bits))
               for t in angles]
        hull = convex_hull(pts)
        if len(hull) == spec.size:
            return Scene("convex_polygon", hull)
    raise SceneError("could not generate a convex polygon")


def _x_monotone(spec: SceneSpec, rng: random.Random) -> Scene:
    n = spec.size
    R = 1 << spec.grid_bits
    for _ in range(1000):
        xs = sorted(rng.sample(range(R), n))
        inner = xs[1:-1]
        upper_flags = [rng.random() < 0.5 for _ in inner]
        left = (Fraction(xs[0]), Fraction(rng.randint(-R // 8, R // 8)))
        right = (Fraction(xs[-1]), Fraction(rng.randint(-R // 8, R // 8)))
        lower = [(Fraction(x), Fraction(-rng.randint(R // 4, R))) for x, up in zip(inner, upper_flags) if not up]
        upper = [(Fraction(x), Fraction(rng.randint(R // 4, R))) for x, up in zip(inner, upper_flags) if up]
        poly = [left] + lower + [right] + upper[::-1]
        poly = [(x / R, y / R) for x, y in poly]
        if is_simple_polygon(poly) and is_x_monotone(poly) and no_three_collinear(poly):
            return Scene("x_monotone_polygon", poly)
    raise SceneError("could not generate an x-monotone polygon")


def _star(spec: SceneSpec, rng: random.Random) -> Scene:
    n = spec.size
    c = (Fraction(0), Fraction(0))
    for _ in range(1000):
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        poly = []
        for t in angles:
            r = rng.uniform(0.3, 1.0)
            poly.append((_grid(r * math.cos(t), spec.grid_bits), _grid(r * math.sin(t), spec.grid_bits)))
        if any(p[1] == c[1] for p in poly):
            continue
        if (is_star_center(poly, c) and is_simple_polygon(poly)
                and no_three_collinear(poly + [c])):
            return Scene("star_polygon", poly, center=c)
    raise SceneError("could not generate a star-shaped polygon")


def _segments(spec: SceneSpec, rng: random.Random) -> Scene:
    R = 1 << min(spec.grid_bits, 10)
    hs, vs = [], []
    for _ in range(spec.size):
        a, b = sorted(rng.randint(0, R) for _ in range(2))
        hs.append(HSeg(a, b, rng.randint(0, R)))
        x, y = sorted(rng.randint(0, R) for _ in range(2))
        vs.append(VSeg(rng.randint(0, R), x, y))
    return Scene("axis_segments", hsegs=hs, vsegs=vs)


def generate_scene(spec: SceneSpec) -> Scene:
    rng = random.Random(spec.seed)
    return {"convex_polygon": _convex, "x_monotone_polygon": _x_monotone,
            "star_polygon": _star, "axis_segments": _segments}[spec.kind](spec, rng)
