"""Directed polygonal curves, crossing signs, curve partitions and the interval coloring lemma."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .geometry import GeometryError, Vec, orientation, proper_crossing, segments_touch, sub, vec


@dataclass(frozen=True)
class Polyline:
    points: tuple

    def __post_init__(self):
        pts = tuple(vec(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise GeometryError("a curve needs at least two points")
        if any(p == q for p, q in zip(pts, pts[1:])):
            raise GeometryError("consecutive points must differ")
        if not self._simple():
            raise GeometryError("curve intersects itself")

    def _simple(self) -> bool:
        segs = self.segments()
        for i, j in itertools.combinations(range(len(segs)), 2):
            (a, b), (c, d) = segs[i], segs[j]
            if j == i + 1:
                # adjacent pieces may only share their common vertex
                if orientation(a, b, d) == 0 and _param_on(a, b, d) is not None:
                    return False
                if orientation(c, d, a) == 0 and _param_on(c, d, a) is not None:
                    return False
            elif segments_touch(a, b, c, d):
                return False
        return True

    def segments(self) -> list[tuple[Vec, Vec]]:
        return list(zip(self.points, self.points[1:]))

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1])

    def locate(self, x: Vec) -> Fraction | None:
        """Curve parameter of x (segment index plus fraction), or None if x is off the curve."""
        x = vec(x)
        for i, (a, b) in enumerate(self.segments()):
            t = _param_on(a, b, x)
            if t is not None:
                return i + t
        return None

    @property
    def length_param(self) -> int:
        return len(self.points) - 1


def _param_on(a: Vec, b: Vec, x: Vec) -> Fraction | None:
    if orientation(a, b, x) != 0:
        return None
    d = sub(b, a)
    i = 0 if d[0] != 0 else 1
    t = (x[i] - a[i]) / d[i]
    return t if 0 <= t <= 1 else None


def _crossing_point(a, b, c, d) -> Vec:
    r, s = sub(b, a), sub(d, c)
    den = r[0] * s[1] - r[1] * s[0]
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den
    return (a[0] + t * r[0], a[1] + t * r[1])


def crossings(a: Polyline, b: Polyline) -> list[Vec]:
    """All crossing points of two curves; any touching contact is rejected."""
    out = []
    for p1, p2 in a.segments():
        for q1, q2 in b.segments():
            if proper_crossing(p1, p2, q1, q2):
                out.append(_crossing_point(p1, p2, q1, q2))
            elif segments_touch(p1, p2, q1, q2):
                raise GeometryError("curves touch at a vertex or overlap")
    return out


def _tangent_at(c: Polyline, x: Vec) -> Vec:
    for p, q in c.segments():
        t = _param_on(p, q, x)
        if t is not None:
            if t == 0 or t == 1:
                raise GeometryError("crossing at a curve vertex")
            return sub(q, p)
    raise GeometryError("point is not on the curve")


def crossing_sign(a: Polyline, b: Polyline, x: Vec) -> int:
    """+1 when the tangents of a and b at x form a positive basis, else -1."""
    x = vec(x)
    ta, tb = _tangent_at(a, x), _tangent_at(b, x)
    det = ta[0] * tb[1] - ta[1] * tb[0]
    if det == 0:
        raise GeometryError("tangential contact")
    return 1 if det > 0 else -1


# --- partition into k+1 subcurves -------------------------------------------

class Subcurve(NamedTuple):
    start: Fraction  # curve parameters, closed interval
    end: Fraction
    colors: frozenset

    def contains_param(self, t) -> bool:
        return self.start <= t <= self.end


def partition_curve(b: Polyline, colored: Sequence[tuple[Vec, int]], k: int) -> list[Subcurve]:
    """Split b into k+1 closed subcurves that each see at least q distinct colors.

    q is max(floor(m / 2k), 1) for m distinct colors. Parts are closed greedily
    along b; leftover crossings join the last part.
    """
    if k < 1:
        raise ValueError("k >= 1")
    located = []
    for x, col in colored:
        t = b.locate(x)
        if t is None:
            raise GeometryError("colored point is not on the curve")
        located.append((t, col))
    located.sort()
    m = len({c for _, c in located})
    if m < k + 1:
        raise ValueError(f"need at least k+1 = {k + 1} colors, got {m}")
    q = max(m // (2 * k), 1)
    groups, cur = [], []
    for i, (t, col) in enumerate(located):
        cur.append(i)
        if len(groups) < k and len({located[j][1] for j in cur}) >= q:
            groups.append(cur)
            cur = []
    if cur:
        groups.append(cur)
    if len(groups) < k + 1 or len({located[j][1] for j in groups[-1]}) < q:
        raise ValueError(f"quota {q} infeasible for k={k} with these crossings")
    parts = []
    start = Fraction(0)
    for g_idx, g in enumerate(groups):
        last = g[-1]
        if g_idx == len(groups) - 1:
            end = Fraction(b.length_param)
        else:
            end = (located[last][0] + located[last + 1][0]) / 2
        parts.append(Subcurve(start, end, frozenset(located[j][1] for j in g)))
        start = end
    return parts


# --- avoiding tuples ------------------------------------------------------------

def _pair_color(curves, parts, r: int, s: int, k: int) -> int | None:
    """Smallest j (1-based) with no crossing of curves r, s inside I_j(curves[r])."""
    xs = crossings(curves[r], curves[s])
    if len(xs) > k:
        raise ValueError(f"curves {r} and {s} cross {len(xs)} > k = {k} times")
    ts = [curves[r].locate(x) for x in xs]
    for j, I in enumerate(parts[r], start=1):
        if not any(I.contains_param(t) for t in ts):
            return j
    return None


def avoids(curves, parts, tup: Sequence[int], j: int) -> bool:
    """Direct check: every crossing of b_r and b_s (r < s in the tuple) lies outside I_j(b_r)."""
    for r, s in itertools.combinations(range(len(tup)), 2):
        br, bs = curves[tup[r]], curves[tup[s]]
        I = parts[tup[r]][j - 1]
        for x in crossings(br, bs):
            if I.contains_param(br.locate(x)):
                return False
    return True


def find_avoiding_tuples(curves: Sequence[Polyline], parts: Sequence[Sequence[Subcurve]],
                         ell: int, k: int) -> tuple[int, list[tuple[int, ...]]]:
    """Color each pair by an index it avoids; return the most popular color and its cliques."""
    if not 1 <= ell <= 3:
        raise ValueError("ell must be 1, 2 or 3")
    n = len(curves)
    color = {}
    for r, s in itertools.combinations(range(n), 2):
        c = _pair_color(curves, parts, r, s, k)
        if c is None:
            raise ValueError(f"no avoided index for curves {r}, {s}")
        color[(r, s)] = c
    best_j, best = 1, None
    for j in range(1, k + 2):
        cliques = [t for t in itertools.combinations(range(n), ell)
                   if all(color[p] == j for p in itertools.combinations(t, 2))]
        if best is None or len(cliques) > len(best):
            best_j, best = j, cliques
    return best_j, best


# --- interval coloring lemma ---------------------------------------------------

@dataclass(frozen=True)
class ColoredSequence:
    positions: tuple
    colors: tuple

    def __post_init__(self):
        if len(self.positions) != len(self.colors):
            raise ValueError("positions and colors differ in length")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must be strictly increasing")

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "ColoredSequence":
        return cls(tuple(range(1, len(colors) + 1)), tuple(colors))

    @property
    def m(self) -> int:
        return len(set(self.colors))


class GoodPairs(NamedTuple):
    pairs: frozenset  # brute-force good (c, d)
    certified: frozenset  # the pairs the prefix construction exhibits
    bound: int  # B(m)


def coloring_bound(m: int) -> int:
    """floor(m/3) * max(0, ceil(2m/3) - ceil(m/3))."""
    return (m // 3) * max(0, -(-2 * m // 3) - (-(-m // 3)))


def _check_colors(colors: Sequence[int]) -> int:
    m = len(set(colors))
    if set(colors) != set(range(1, m + 1)):
        raise ValueError("colors must be exactly 1..m, each used")
    return m


def brute_good_pairs(colors: Sequence[int]) -> frozenset:
    m = _check_colors(colors)
    N = len(colors)
    out = set()
    for i in range(N):
        seen = Counter()
        for j in range(i, N):
            seen[colors[j]] += 1
            if j == i:
                continue
            c, d = colors[i], colors[j]
            if c != d and seen[c] == 1 and seen[d] == 1 and 3 * len(seen) >= m:
                out.add((c, d))
    return frozenset(out)


def proof_good_pairs(colors: Sequence[int]) -> frozenset:
    """Pairs produced by the prefix argument: C from the shortest prefix with ceil(2m/3) colors."""
    m = _check_colors(colors)
    N = len(colors)
    big, small = math.ceil(Fraction(2 * m, 3)), math.ceil(Fraction(m, 3))
    seen, t = set(), None
    for i, c in enumerate(colors):
        seen.add(c)
        if len(seen) >= big:
            t = i
            break
    if t is None:
        return frozenset()
    C = set(colors[:t + 1])
    first = {}
    for i, c in enumerate(colors):
        first.setdefault(c, i)
    out = set()
    for d in sorted(set(range(1, m + 1)) - C):
        j = first[d]
        window, s = set(), None
        for i in range(j, -1, -1):
            window.add(colors[i])
            if len(window) >= small:
                s = i
                break
        if s is None:
            continue
        inside = set(colors[s:j + 1])
        for c in C - inside:
            out.add((c, d))
    return frozenset(out)


def good_pairs(seq: ColoredSequence) -> GoodPairs:
    colors = list(seq.colors)
    return GoodPairs(brute_good_pairs(colors), proof_good_pairs(colors), coloring_bound(seq.m))


def restricted_growth_strings(N: int):
    """Every coloring of [N] up to renaming, with colors 1..m in order of first use."""
    def rec(prefix, mx):
        if len(prefix) == N:
            yield tuple(prefix)
            return
        for c in range(1, mx + 2):
            prefix.append(c)
            yield from rec(prefix, max(mx, c))
            prefix.pop()
    if N == 0:
        return
    yield from rec([], 0)
