"""Exact rational geometry: predicates, ranges, polytopes and the lifting maps.

Every coordinate is a :class:`fractions.Fraction`, so all predicates here are
decided exactly; there are no tolerances anywhere in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction
Vec = tuple  # tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


class UnboundedPolytope(GeometryError):
    pass


class EmptyPolytope(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


def rat(x) -> Fraction:
    """Parse ints, Fractions, or strings like ``"3/4"`` / ``"0.4"`` exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(x)


def vec(*xs) -> Vec:
    if len(xs) == 1 and not isinstance(xs[0], (int, str, Fraction)):
        xs = tuple(xs[0])
    return tuple(rat(x) for x in xs)


def rat_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    num, sep, den = s.partition("/")
    if not sep:
        return Fraction(int(num))
    q = Fraction(int(num), int(den))
    if q.denominator != int(den) or int(den) <= 0:
        raise ValueError(f"non-canonical rational {s!r}")
    return q


# --- vector helpers -------------------------------------------------------

def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def cross(u: Vec, v: Vec) -> Vec:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            f = m[r][c] / p
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return sign * result


def normal_of(vectors: Sequence[Vec]) -> Vec:
    """Generalized cross product of d-1 vectors in R^d (d in 2..4)."""
    d = len(vectors) + 1
    if d == 2:
        (x, y), = vectors
        return (-y, x)
    out = []
    for k in range(d):
        minor = [[v[j] for j in range(d) if j != k] for v in vectors]
        out.append((-1) ** k * det(minor))
    return tuple(out)


def solve(a: Sequence[Sequence], b: Sequence) -> Vec | None:
    """Unique solution of the square system ``a x = b`` or None if singular."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        row_c = m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / p
                row_r = m[r]
                for k in range(c, n + 1):
                    row_r[k] -= f * row_c[k]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def rank(vectors: Sequence[Vec]) -> int:
    m = [list(map(Fraction, v)) for v in vectors]
    if not m:
        return 0
    ncol = len(m[0])
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                for k in range(c, ncol):
                    m[i][k] -= f * m[r][k]
        r += 1
        if r == len(m):
            break
    return r


def primitive(v: Vec) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers (sign kept)."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise DegenerateInput("zero vector has no direction")
    return tuple(x // g for x in ints)


def direction_key(v: Vec) -> tuple[int, ...]:
    """Canonical key of the line spanned by ``v`` (sign and scale removed)."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    raise AssertionError


# --- planar predicates ----------------------------------------------------

def orientation(p: Vec, q: Vec, r: Vec) -> int:
    """Sign of det(q - p, r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def on_segment(p: Vec, q: Vec, r: Vec) -> bool:
    """Is r on the closed segment pq (assuming collinearity is checked here too)."""
    if orientation(p, q, r) != 0:
        return False
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def proper_crossing(p1: Vec, p2: Vec, q1: Vec, q2: Vec) -> bool:
    """Segments cross at a single point interior to both."""
    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)
    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_touch(p1: Vec, p2: Vec, q1: Vec, q2: Vec) -> bool:
    """Closed segments share at least one point."""
    if proper_crossing(p1, p2, q1, q2):
        return True
    return (on_segment(p1, p2, q1) or on_segment(p1, p2, q2)
            or on_segment(q1, q2, p1) or on_segment(q1, q2, p2))


def line_intersection(p1: Vec, p2: Vec, q1: Vec, q2: Vec) -> Vec | None:
    """Intersection point of the lines p1p2 and q1q2, None if parallel."""
    d1 = sub(p2, p1)
    d2 = sub(q2, q1)
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = sub(q1, p1)
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    return add(p1, scale(t, d1))


def polygon_area2(poly: Sequence[Vec]) -> Fraction:
    """Twice the signed area (positive for counterclockwise)."""
    s = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def point_in_polygon(poly: Sequence[Vec], p: Vec) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (any simple polygon)."""
    n = len(poly)
    inside = False
    px, py = p
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if on_segment(a, b, p):
            return 0
        ay, by = a[1], b[1]
        if (ay > py) != (by > py):
            # x-coordinate of the edge at height py, compared exactly
            xint = a[0] + (py - ay) * (b[0] - a[0]) / (by - ay)
            if px < xint:
                inside = not inside
    return 1 if inside else -1


def convex_hull(points: Iterable[Vec]) -> list[Vec]:
    """Strictly convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def is_convex_polygon(poly: Sequence[Vec]) -> bool:
    n = len(poly)
    if n < 3:
        return False
    for i in range(n):
        if orientation(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) <= 0:
            return False
    return polygon_area2(poly) > 0


# --- ranges ---------------------------------------------------------------

@dataclass(frozen=True)
class Halfspace:
    """The set ``{x : <normal, x> sense offset}`` with sense ``"<="`` or ``">="``."""

    normal: Vec
    offset: Fraction
    sense: str = "<="

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "offset", rat(self.offset))
        if self.sense not in ("<=", ">="):
            raise ValueError(f"bad sense {self.sense!r}")
        if all(a == 0 for a in self.normal):
            raise DegenerateInput("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def contains(self, p: Vec) -> bool:
        v = dot(self.normal, p)
        return v <= self.offset if self.sense == "<=" else v >= self.offset

    def as_le(self) -> tuple[Vec, Fraction]:
        if self.sense == "<=":
            return self.normal, self.offset
        return tuple(-a for a in self.normal), -self.offset

    def canonical(self) -> "Halfspace":
        """Rescale so the normal is a coprime integer vector (sense preserved)."""
        p = primitive(self.normal)
        # ratio of primitive to original is positive because primitive keeps sign
        k = next(Fraction(pi) / ai for pi, ai in zip(p, self.normal) if ai != 0)
        return Halfspace(tuple(Fraction(x) for x in p), self.offset * k, self.sense)


@dataclass(frozen=True)
class Box:
    lo: Vec
    hi: Vec

    def __post_init__(self):
        object.__setattr__(self, "lo", vec(self.lo))
        object.__setattr__(self, "hi", vec(self.hi))
        if len(self.lo) != len(self.hi):
            raise DimensionMismatch("box corners differ in dimension")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains(self, p: Vec) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))


@dataclass(frozen=True)
class Ellipse:
    """Axis-parallel ellipse ``a (x-x0)^2 + b (y-y0)^2 <= 1``."""

    a: Fraction
    b: Fraction
    center: Vec

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "center", vec(self.center))
        if self.a <= 0 or self.b <= 0:
            raise DegenerateInput("ellipse coefficients must be positive")

    dim = 2

    def value(self, p: Vec) -> Fraction:
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        return self.a * dx * dx + self.b * dy * dy

    def contains(self, p: Vec) -> bool:
        return self.value(p) <= 1


class Polytope:
    """H-represented polytope ``{x : <a_i, x> <= b_i}`` with lazily computed vertices."""

    def __init__(self, halfspaces: Iterable[Halfspace], dim: int | None = None):
        hs = [h if isinstance(h, Halfspace) else Halfspace(*h) for h in halfspaces]
        dims = {h.dim for h in hs} | ({dim} if dim is not None else set())
        if len(dims) != 1:
            raise DimensionMismatch("halfspaces of mixed or unknown dimension")
        self.halfspaces: tuple[Halfspace, ...] = tuple(hs)
        self.dim = dims.pop()
        self._rows = [h.as_le() for h in hs]

    def __repr__(self):
        return f"Polytope(dim={self.dim}, m={len(self.halfspaces)})"

    def contains(self, p: Vec) -> bool:
        return all(dot(a, p) <= b for a, b in self._rows)

    @cached_property
    def is_bounded(self) -> bool:
        return is_bounded(self)

    @cached_property
    def vertices(self) -> tuple[Vec, ...]:
        return tuple(vertex_enumeration(self))

    def facets(self) -> list[tuple[Halfspace, tuple[Vec, ...]]]:
        """Distinct facet-defining constraints (in <= form) with their vertices."""
        verts = self.vertices
        out = []
        seen = set()
        for a, b in self._rows:
            tight = tuple(v for v in verts if dot(a, v) == b)
            if len(tight) < self.dim:
                continue
            base = tight[0]
            if rank([sub(v, base) for v in tight[1:]]) != self.dim - 1:
                continue
            h = Halfspace(a, b).canonical()
            key = (h.normal, h.offset)
            if key in seen:
                continue
            seen.add(key)
            out.append((h, tight))
        return out

    def bounding_box(self) -> Box:
        verts = self.vertices
        return Box(tuple(min(v[i] for v in verts) for i in range(self.dim)),
                   tuple(max(v[i] for v in verts) for i in range(self.dim)))


def is_bounded(poly: Polytope) -> bool:
    """Exact boundedness test by enumerating extreme rays of the recession cone.

    The cone ``{y : A y <= 0}`` is trivial iff the normals have full rank and no
    candidate ray (the null direction of d-1 independent rows) lies in the cone.
    """
    rows = [a for a, _ in poly._rows]
    d = poly.dim
    if rank(rows) < d:
        return False
    for combo in itertools.combinations(rows, d - 1):
        if d - 1 and rank(list(combo)) < d - 1:
            continue
        r = normal_of(list(combo)) if d > 1 else (Fraction(1),)
        for sgn in (1, -1):
            ray = scale(sgn, r)
            if all(dot(a, ray) <= 0 for a in rows):
                return False
    return True


def vertex_enumeration(poly: Polytope) -> list[Vec]:
    """All vertices of a bounded polytope by brute force over d-subsets of facets."""
    if poly.dim > 4:
        raise GeometryError("vertex enumeration supports d <= 4")
    if not is_bounded(poly):
        raise UnboundedPolytope("polytope is unbounded")
    rows = poly._rows
    d = poly.dim
    found: dict[Vec, None] = {}
    for combo in itertools.combinations(range(len(rows)), d):
        sol = solve([rows[i][0] for i in combo], [rows[i][1] for i in combo])
        if sol is None or sol in found:
            continue
        if all(dot(a, sol) <= b for a, b in rows):
            found[sol] = None
    if not found:
        raise EmptyPolytope("polytope is empty")
    return sorted(found)


def polytope_from_box(box: Box) -> Polytope:
    hs = []
    for i in range(box.dim):
        e = tuple(Fraction(int(j == i)) for j in range(box.dim))
        hs.append(Halfspace(e, box.hi[i], "<="))
        hs.append(Halfspace(e, box.lo[i], ">="))
    return Polytope(hs)


@dataclass(frozen=True)
class Parallelotope:
    """``{base + sum s_i g_i : s in [0,1]^d}`` for linearly independent generators."""

    base: Vec
    generators: tuple[Vec, ...]
    _planes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = vec(self.base)
        gens = tuple(vec(g) for g in self.generators)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "generators", gens)
        d = len(base)
        if len(gens) != d or any(len(g) != d for g in gens):
            raise DimensionMismatch("need d generators of dimension d")
        if det(gens) == 0:
            raise DegenerateInput("generators are linearly dependent")
        planes = []
        for i in range(d):
            n = normal_of([g for j, g in enumerate(gens) if j != i])
            w = dot(n, gens[i])
            if w < 0:
                n = tuple(-x for x in n)
                w = -w
            planes.append((n, dot(n, base), w))
        object.__setattr__(self, "_planes", tuple(planes))

    @property
    def dim(self) -> int:
        return len(self.base)

    def contains(self, p: Vec) -> bool:
        for n, nb, w in self._planes:
            s = dot(n, p) - nb
            if s < 0 or s > w:
                return False
        return True

    def coordinates(self, p: Vec) -> Vec:
        """Coefficients of ``p - base`` in the generator basis."""
        return tuple((dot(n, p) - nb) / w for n, nb, w in self._planes)

    def vertices(self) -> list[Vec]:
        out = []
        for mask in itertools.product((0, 1), repeat=self.dim):
            v = self.base
            for bit, g in zip(mask, self.generators):
                if bit:
                    v = add(v, g)
            out.append(v)
        return out

    def halfspaces(self) -> list[Halfspace]:
        hs = []
        for n, nb, w in self._planes:
            hs.append(Halfspace(n, nb, ">="))
            hs.append(Halfspace(n, nb + w, "<="))
        return hs

    def facet_directions(self) -> frozenset:
        """Canonical keys of the facet normals (the parallelotope's type)."""
        return frozenset(direction_key(n) for n, _, _ in self._planes)

    def volume(self) -> Fraction:
        return abs(det(self.generators))

    def sample(self, rng) -> Vec:
        p = self.base
        for g in self.generators:
            p = add(p, scale(Fraction(rng.getrandbits(20), 1 << 20), g))
        return p


# --- axis-parallel segments ----------------------------------------------

@dataclass(frozen=True)
class HSeg:
    """Horizontal segment from (a, h) to (b, h); flags say whether ends are closed."""

    a: Fraction
    b: Fraction
    h: Fraction
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        for name in ("a", "b", "h"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.a > self.b:
            raise DegenerateInput("HSeg needs a <= b")


@dataclass(frozen=True)
class VSeg:
    """Vertical segment from (v, x) to (v, y)."""

    v: Fraction
    x: Fraction
    y: Fraction
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        for name in ("v", "x", "y"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.x > self.y:
            raise DegenerateInput("VSeg needs x <= y")


def _within(lo, val, hi, closed_lo, closed_hi) -> bool:
    left = lo <= val if closed_lo else lo < val
    right = val <= hi if closed_hi else val < hi
    return left and right


def segments_intersect(s, t) -> Vec | None:
    """Crossing point of a horizontal and a vertical segment, honoring open ends."""
    if isinstance(s, VSeg) and isinstance(t, HSeg):
        s, t = t, s
    if not (isinstance(s, HSeg) and isinstance(t, VSeg)):
        raise GeometryError("segments_intersect needs one HSeg and one VSeg")
    if (_within(s.a, t.v, s.b, s.closed_lo, s.closed_hi)
            and _within(t.x, s.h, t.y, t.closed_lo, t.closed_hi)):
        return (t.v, s.h)
    return None


# --- membership dispatch --------------------------------------------------

def contains(shape, p: Vec) -> bool:
    """Exact closed membership of point ``p`` in any supported range."""
    if getattr(shape, "dim", len(p)) != len(p):
        raise DimensionMismatch(f"shape of dim {shape.dim} vs point of dim {len(p)}")
    return shape.contains(p)


# --- duality and lifting --------------------------------------------------

@dataclass(frozen=True)
class NormalizedConfig:
    """Points with positive last coordinate and halfspaces ``<y, x> >= 1``."""

    points: tuple[Vec, ...]
    normals: tuple[Vec, ...]
    shift: Vec


def normalize_for_duality(points: Sequence[Vec], halfspaces: Sequence[Halfspace],
                          ) -> NormalizedConfig:
    """Translate vertically so every point has z > 0 and every halfspace reads ``<y,x> >= 1``.

    Halfspaces must be upward oriented (sense ``>=`` with positive last normal
    coordinate after conversion).
    """
    pts = [vec(p) for p in points]
    rows = []
    for h in halfspaces:
        a, b = h.as_le()
        a, b = tuple(-x for x in a), -b  # now a.x >= b
        if len(a) != 3 or a[2] <= 0:
            raise GeometryError("normalize_for_duality needs upward 3D halfspaces")
        rows.append((a, b))
    if any(len(p) != 3 for p in pts):
        raise DimensionMismatch("normalize_for_duality works in R^3")
    # smallest integer shift S >= 0 with z + S > 0 and b + a_z S > 0 everywhere
    need = Fraction(0)
    for p in pts:
        need = max(need, -p[2])
    for a, b in rows:
        need = max(need, -b / a[2])
    ok_now = all(p[2] > 0 for p in pts) and all(b > 0 for _, b in rows)
    shift_z = Fraction(0) if ok_now else Fraction(int(need) + 1)
    s = (Fraction(0), Fraction(0), shift_z)
    new_pts = tuple(add(p, s) for p in pts)
    normals = []
    for a, b in rows:
        rhs = b + dot(a, s)
        if rhs == 0:
            raise DegenerateInput("halfspace boundary passes through the origin")
        normals.append(scale(1 / rhs, a))
    return NormalizedConfig(new_pts, tuple(normals), s)


def dualize(points: Sequence[Vec], normals: Sequence[Vec]) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Point x -> halfspace <x,.> >= 1, halfspace <.,y> >= 1 -> point y.

    Returns ``(new_points, new_normals)``; incidence <y, x> >= 1 is symmetric, so
    the bipartite incidence graph is preserved with the classes swapped.
    """
    return tuple(vec(y) for y in normals), tuple(vec(x) for x in points)


def normalized_incident(point: Vec, normal: Vec) -> bool:
    return dot(normal, point) >= 1


def lift_point(p: Vec) -> Vec:
    t, u = vec(p)
    return (t * t, t, u * u, u)


def lift_ellipse(e: Ellipse) -> Halfspace:
    """Halfspace in R^4 containing lift_point(p) exactly when p lies in ``e``."""
    a, b = e.a, e.b
    x0, y0 = e.center
    normal = (a, -2 * a * x0, b, -2 * b * y0)
    return Halfspace(normal, 1 - a * x0 * x0 - b * y0 * y0, "<=")
