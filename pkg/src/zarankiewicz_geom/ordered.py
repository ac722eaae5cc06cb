"""Ordered bipartite patterns: containment search, blow-ups and induced-matching extraction."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .graph import BudgetExceeded, Graph, OrderedGraph

EDGE, NON, ANY = "e", "n", "*"


@dataclass(frozen=True)
class OrderedPattern:
    """Rows are the left class (in order), columns the right class."""

    n1: int
    n2: int
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.n1 or any(len(r) != self.n2 for r in rows):
            raise ValueError("matrix dimensions do not match (n1, n2)")
        if any(x not in (EDGE, NON, ANY) for r in rows for x in r):
            raise ValueError("entries must be 'e', 'n' or '*'")

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "OrderedPattern":
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(tuple(r) for r in rows))

    def to_json(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "matrix": ["".join(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, d: dict) -> "OrderedPattern":
        return cls(d["n1"], d["n2"], tuple(tuple(r) for r in d["matrix"]))

    def matched_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n1) for j in range(self.n2) if self.matrix[i][j] == EDGE]

    def is_matching(self) -> bool:
        if any(x == ANY for r in self.matrix for x in r):
            return False
        pairs = self.matched_pairs()
        return len({i for i, _ in pairs}) == len(pairs) == len({j for _, j in pairs})


NAMED_PATTERNS = {
    "double_cherry": OrderedPattern.from_rows(["*e*", "ene", "*e*"]),
    "familyM": OrderedPattern.from_rows(["**e", "en*", "*e*"]),
    "M0": OrderedPattern.from_rows(["nne", "enn", "nen"]),
    "M1": OrderedPattern.from_rows(["nee", "ene", "een"]),
    "M2": OrderedPattern.from_rows(["enn", "nen", "nne"]),
    "star_family": OrderedPattern.from_rows(["en", "*e"]),
}


def _fits(G: Graph, x: int, y: int, entry: str) -> bool:
    if entry == ANY:
        return True
    return (y in G.adj[x]) == (entry == EDGE)


def contains_pattern(G: Graph, split: int | None, pat: OrderedPattern,
                     budget: int = 10**7) -> tuple[tuple, tuple] | None:
    """Bipartite-induced copy of ``pat``: left x_1<..<x_n1 before right y_1<..<y_n2.

    With ``split`` the left vertices lie below it and the right ones at or above
    it; with ``split=None`` any placement with all left before all right counts.
    Returns the lexicographically first witness.
    """
    n = G.n
    n1, n2 = pat.n1, pat.n2
    work = [0]

    def tick():
        work[0] += 1
        if work[0] > budget:
            raise BudgetExceeded(f"pattern search exceeded {budget} steps")

    def right(xs: list, ys: list, start: int):
        j = len(ys)
        if j == n2:
            return tuple(ys)
        col = [pat.matrix[i][j] for i in range(n1)]
        for y in range(start, n - (n2 - j - 1)):
            tick()
            if all(_fits(G, xs[i], y, col[i]) for i in range(n1)):
                ys.append(y)
                w = right(xs, ys, y + 1)
                if w is not None:
                    return w
                ys.pop()
        return None

    def left(xs: list, start: int):
        i = len(xs)
        if i == n1:
            lo = xs[-1] + 1 if xs else 0
            if split is not None:
                lo = max(lo, split)
            w = right(xs, [], lo)
            return None if w is None else (tuple(xs), w)
        hi = (split if split is not None else n - n2) - (n1 - i - 1)
        for x in range(start, hi):
            tick()
            xs.append(x)
            w = left(xs, x + 1)
            if w is not None:
                return w
            xs.pop()
        return None

    return left([], 0)


def contains_pattern_naive(G: Graph, split: int | None, pat: OrderedPattern):
    """Full enumeration oracle for :func:`contains_pattern`."""
    for combo in itertools.combinations(range(G.n), pat.n1 + pat.n2):
        xs, ys = combo[:pat.n1], combo[pat.n1:]
        if split is not None and ((xs and xs[-1] >= split) or (ys and ys[0] < split)):
            continue
        if all(_fits(G, xs[i], ys[j], pat.matrix[i][j])
               for i in range(pat.n1) for j in range(pat.n2)):
            return xs, ys
    return None


# --- blow-ups and induced matchings -----------------------------------------------

class Blowup(NamedTuple):
    graph: OrderedGraph
    intervals: list  # list of ranges, one per pattern vertex
    matchings: dict  # (a, b) -> list of edges (x_a, x_b), a < b interval indices
    pattern: OrderedPattern


def gen_blowup(M: OrderedPattern, ell: int) -> Blowup:
    """Replace every pattern vertex by an interval of ell vertices; matched pairs get aligned matchings."""
    if not M.is_matching():
        raise ValueError("blow-ups need a matching pattern (no wildcards)")
    k = M.n1 + M.n2
    intervals = [range(t * ell, (t + 1) * ell) for t in range(k)]
    edges, matchings = [], {}
    for i, j in M.matched_pairs():
        a, b = i, M.n1 + j
        N = [(a * ell + r, b * ell + r) for r in range(ell)]
        matchings[(a, b)] = N
        edges.extend(N)
    g = Graph.from_edges(k * ell, edges)
    return Blowup(OrderedGraph(g.n, g.adj), intervals, matchings, M)


def induces_pattern(G: Graph, xs: Sequence[int], M: OrderedPattern) -> bool:
    """x_1..x_k (one per pattern vertex) induce M: cross pairs follow M, same-side pairs are non-edges."""
    k = M.n1 + M.n2
    if len(xs) != k or any(a >= b for a, b in zip(xs, xs[1:])):
        return False
    for a, b in itertools.combinations(range(k), 2):
        if a < M.n1 <= b:
            entry = M.matrix[a][b - M.n1]
        else:
            entry = NON
        if not _fits(G, xs[a], xs[b], entry):
            return False
    return True


def extract_induced_matching(G: Graph, intervals: Sequence, matchings: dict, M: OrderedPattern,
                             seed: int, max_retries: int = 200) -> tuple[int, ...] | None:
    """Sample one edge per matched pair until the chosen vertices induce M."""
    rng = random.Random(seed)
    k = M.n1 + M.n2
    for _ in range(max_retries):
        xs = [None] * k
        for (a, b), N in sorted(matchings.items()):
            xa, xb = N[rng.randrange(len(N))]
            xs[a], xs[b] = xa, xb
        for t in range(k):
            if xs[t] is None:
                xs[t] = rng.choice(list(intervals[t]))
        if induces_pattern(G, xs, M):
            return tuple(xs)
    return None
