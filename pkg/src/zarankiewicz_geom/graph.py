"""Simple graphs and the exact structural queries used throughout the package."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Sequence

import networkx as nx


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured enumeration budget."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple  # tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise ValueError(f"self-loop at {v}")
            for u in nb:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency at {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]):
        nb = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nb[u].add(v)
            nb[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nb))

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled 0..k-1, plus the new-to-old vertex map."""
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        adj = tuple(frozenset(index[u] for u in self.adj[v] if u in index) for v in verts)
        return Graph(len(verts), adj), verts

    def edges_within(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(len(self.adj[v] & s) for v in s) // 2

    def edges_between(self, A: Iterable[int], B: Iterable[int]) -> int:
        """Number of pairs (a, b) in A x B that are adjacent (sets may overlap)."""
        bset = set(B)
        return sum(len(self.adj[a] & bset) for a in A)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class OrderedGraph(Graph):
    """A graph whose vertex order is the index order."""


@dataclass(frozen=True)
class BipartiteGraph(Graph):
    classA: tuple = ()
    classB: tuple = ()

    def __post_init__(self):
        super().__post_init__()
        a, b = set(self.classA), set(self.classB)
        if a & b or a | b != set(range(self.n)):
            raise ValueError("classes must partition the vertex set")
        for u in a:
            if self.adj[u] & a:
                raise ValueError("edge inside class A")
        for u in b:
            if self.adj[u] & b:
                raise ValueError("edge inside class B")

    @classmethod
    def from_biadjacency(cls, na: int, nb: int, pairs: Iterable[tuple[int, int]]):
        """Class A is 0..na-1, class B is na..na+nb-1; pairs index within classes."""
        g = Graph.from_edges(na + nb, ((i, na + j) for i, j in pairs))
        return cls(g.n, g.adj, tuple(range(na)), tuple(range(na, na + nb)))

    def biadjacency(self) -> list[list[int]]:
        return [[int(b in self.adj[a]) for b in self.classB] for a in self.classA]


class Partition(NamedTuple):
    A: frozenset
    B: frozenset


class Biclique(NamedTuple):
    S: tuple
    T: tuple
    exact: bool


# --- basic statistics --------------------------------------------------------

def average_degree(G: Graph) -> Fraction:
    if G.n == 0:
        return Fraction(0)
    return Fraction(2 * G.m, G.n)


def find_C4(G: Graph) -> tuple[int, int, int, int] | None:
    """A 4-cycle (a, b, c, d) with edges ab, bc, cd, da, or None if C4-free."""
    seen: dict[tuple[int, int], int] = {}
    for v in range(G.n):
        nb = sorted(G.adj[v])
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                w = seen.get((a, b))
                if w is not None:
                    return (a, v, b, w)
                seen[(a, b)] = v
    return None


def codegree_matrix(G: Graph) -> list[list[int]]:
    return [[len(G.adj[u] & G.adj[v]) if u != v else 0 for v in range(G.n)]
            for u in range(G.n)]


# --- bicliques and sparsity --------------------------------------------------

def find_biclique(G: Graph, s: int, cap: int = 10**6,
                  allow_heuristic: bool = False) -> Biclique | None:
    """Find disjoint S, T of size s with every S-T pair adjacent.

    The search grows S in increasing index order while tracking the common
    neighbourhood, so the result is the lexicographically first S (with T the
    s smallest common neighbours). ``cap`` bounds the number of search nodes.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    cand = [v for v in range(G.n) if len(G.adj[v]) >= s]
    nodes = 0

    def grow(start: int, S: list[int], common: frozenset | None):
        nonlocal nodes
        if len(S) == s:
            return tuple(S), tuple(sorted(common)[:s])
        for i in range(start, len(cand)):
            v = cand[i]
            nodes += 1
            if nodes > cap:
                raise BudgetExceeded(f"biclique search exceeded {cap} nodes")
            nc = G.adj[v] if common is None else common & G.adj[v]
            if len(nc) < s:
                continue
            if len(cand) - i < s - len(S):
                break
            S.append(v)
            found = grow(i + 1, S, nc)
            S.pop()
            if found:
                return found
        return None

    try:
        res = grow(0, [], None)
    except BudgetExceeded:
        if not allow_heuristic:
            raise
        return _greedy_biclique(G, s)
    if res is None:
        return None
    return Biclique(res[0], res[1], True)


def _greedy_biclique(G: Graph, s: int) -> Biclique | None:
    order = sorted(range(G.n), key=lambda v: (-len(G.adj[v]), v))
    for start in order:
        S = [start]
        common = G.adj[start]
        while len(S) < s:
            best = max((v for v in order if v not in S),
                       key=lambda v: (len(common & G.adj[v]), -v), default=None)
            if best is None or len(common & G.adj[best]) < s:
                break
            S.append(best)
            common = common & G.adj[best]
        if len(S) == s and len(common) >= s:
            return Biclique(tuple(sorted(S)), tuple(sorted(common)[:s]), False)
    return None


def is_ct_sparse(G: Graph, c, t: int, budget: int = 10**6) -> tuple[tuple, tuple] | None:
    """Return a witness (A, B) with |A|=|B|=t and e(A,B) > (1-c) t^2, or None.

    For a fixed A the best B takes the t vertices with most neighbours in A,
    so only the C(n, t) choices of A are enumerated.
    """
    c = Fraction(c)
    if not 1 <= t <= G.n:
        raise ValueError("need 1 <= t <= n")
    if comb(G.n, t) > budget:
        raise BudgetExceeded(f"C({G.n},{t}) exceeds budget {budget}")
    limit = (1 - c) * t * t
    for A in itertools.combinations(range(G.n), t):
        aset = set(A)
        scores = sorted(((len(G.adj[v] & aset), v) for v in range(G.n)),
                        key=lambda x: (-x[0], x[1]))
        top = scores[:t]
        if sum(x for x, _ in top) > limit:
            return A, tuple(sorted(v for _, v in top))
    return None


# --- degeneracy, cuts, density ----------------------------------------------

def degeneracy(G: Graph) -> tuple[int, list[int], dict[int, frozenset]]:
    """Min-degree peeling: (d, elimination order, orientation toward later vertices)."""
    deg = [len(a) for a in G.adj]
    removed = [False] * G.n
    order: list[int] = []
    d = 0
    for _ in range(G.n):
        v = min((u for u in range(G.n) if not removed[u]), key=lambda u: (deg[u], u))
        d = max(d, deg[v])
        order.append(v)
        removed[v] = True
        for u in G.adj[v]:
            if not removed[u]:
                deg[u] -= 1
    pos = {v: i for i, v in enumerate(order)}
    orient = {v: frozenset(u for u in G.adj[v] if pos[u] > pos[v]) for v in range(G.n)}
    return d, order, orient


def local_max_cut(G: Graph) -> Partition:
    """Local search: flip any vertex with fewer than half its neighbours across."""
    side = [0] * G.n
    for v in range(G.n):
        zeros = sum(1 for u in G.adj[v] if u < v and side[u] == 0)
        ones = sum(1 for u in G.adj[v] if u < v and side[u] == 1)
        side[v] = 1 if zeros > ones else 0
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            across = sum(1 for u in G.adj[v] if side[u] != side[v])
            if 2 * across < len(G.adj[v]):
                side[v] ^= 1
                changed = True
    A = frozenset(v for v in range(G.n) if side[v] == 0)
    return Partition(A, frozenset(range(G.n)) - A)


def cut_size(G: Graph, part: Partition) -> int:
    return G.edges_between(part.A, part.B)


def _best_set_for_ratio(G: Graph, p: int, q: int) -> frozenset:
    """Vertex set maximising q*e(U) - p*|U| via a Goldberg min cut (integer capacities)."""
    m = G.m
    big = m * q
    net = nx.DiGraph()
    s, t = "s", "t"
    for v in range(G.n):
        net.add_edge(s, v, capacity=big)
        net.add_edge(v, t, capacity=big + 2 * p - q * len(G.adj[v]))
    for u, v in G.edges():
        net.add_edge(u, v, capacity=q)
        net.add_edge(v, u, capacity=q)
    _, (src_side, _) = nx.minimum_cut(net, s, t)
    return frozenset(v for v in src_side if v != s)


def _densest_exhaustive(G: Graph) -> tuple[int, ...]:
    best, best_val = tuple(range(G.n)), average_degree(G)
    for mask in range(1, 1 << G.n):
        U = [v for v in range(G.n) if mask >> v & 1]
        val = Fraction(2 * G.edges_within(U), len(U))
        if val > best_val:
            best, best_val = tuple(U), val
    return best


def densest_subgraph(G: Graph, method: str = "flow") -> tuple[int, ...]:
    """Vertex set of an induced subgraph of maximum average degree.

    ``method="flow"`` runs a Dinkelbach iteration on the ratio e(U)/|U|, each
    step solved exactly by an integral max-flow; ``"exhaustive"`` tries every
    subset (n <= 16).
    """
    if G.n == 0:
        return ()
    if method == "exhaustive":
        if G.n > 16:
            raise BudgetExceeded("exhaustive densest subgraph needs n <= 16")
        return _densest_exhaustive(G)
    if method != "flow":
        raise ValueError(f"unknown method {method!r}")
    U = frozenset(range(G.n))
    if G.m == 0:
        return tuple(sorted(U))
    ratio = Fraction(G.edges_within(U), len(U))
    while True:
        cand = _best_set_for_ratio(G, ratio.numerator, ratio.denominator)
        if not cand:
            break
        r = Fraction(G.edges_within(cand), len(cand))
        if r <= ratio:
            break
        U, ratio = cand, r
    return tuple(sorted(U))


# --- generators --------------------------------------------------------------

def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    pts = []
    for x in range(q):
        for y in range(q):
            pts.append((1, x, y))
    for y in range(q):
        pts.append((0, 1, y))
    pts.append((0, 0, 1))
    return pts


def gen_projective_plane(q: int) -> BipartiteGraph:
    """Point-line incidence graph of PG(2, q): points are class A, lines class B."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    pts = _projective_points(q)
    N = len(pts)
    pairs = [(i, j) for i, p in enumerate(pts) for j, l in enumerate(pts)
             if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0]
    return BipartiteGraph.from_biadjacency(N, N, pairs)


def gen_subdivision_graph(v: int, h: int) -> BipartiteGraph:
    """One B-vertex per h-subset of the v A-vertices, adjacent to exactly that subset."""
    if not 1 <= h <= v:
        raise ValueError("need 1 <= h <= v")
    subsets = list(itertools.combinations(range(v), h))
    pairs = [(a, j) for j, S in enumerate(subsets) for a in S]
    return BipartiteGraph.from_biadjacency(v, len(subsets), pairs)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph.from_biadjacency(a, b, itertools.product(range(a), range(b)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def gnp(n: int, p, seed: int) -> Graph:
    rng = random.Random(seed)
    p = Fraction(p)
    return Graph.from_edges(n, (e for e in itertools.combinations(range(n), 2)
                                if rng.random() < p))


def random_bipartite(na: int, nb: int, p, seed: int) -> BipartiteGraph:
    rng = random.Random(seed)
    p = Fraction(p)
    return BipartiteGraph.from_biadjacency(
        na, nb, [(i, j) for i in range(na) for j in range(nb) if rng.random() < p])
