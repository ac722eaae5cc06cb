import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from zarankiewicz_geom.graph import BudgetExceeded, Graph
from zarankiewicz_geom.ordered import (
    NAMED_PATTERNS, OrderedPattern, contains_pattern, contains_pattern_naive, extract_induced_matching,
    gen_blowup, induces_pattern,
)

# 1-based description: {2,4},{2,6},{1,5},{3,5} edges, {2,5} missing
CHERRY_EDGES = [(1, 3), (1, 5), (0, 4), (2, 4)]


def test_double_cherry_matrix():
    pat = NAMED_PATTERNS["double_cherry"]
    assert pat.matrix[1] == ("e", "n", "e")
    assert pat.matrix[0][1] == pat.matrix[2][1] == "e"


def test_double_cherry_found():
    G = Graph.from_edges(6, CHERRY_EDGES)
    w = contains_pattern(G, 3, NAMED_PATTERNS["double_cherry"])
    assert w == ((0, 1, 2), (3, 4, 5))
    G2 = Graph.from_edges(6, CHERRY_EDGES + [(1, 4)])
    assert contains_pattern(G2, 3, NAMED_PATTERNS["double_cherry"]) is None


def test_edgeless_graph_has_no_edge_patterns():
    G = Graph.from_edges(10, [])
    for name, pat in NAMED_PATTERNS.items():
        assert contains_pattern(G, None, pat) is None, name


def test_pattern_validation_and_json():
    with pytest.raises(ValueError):
        OrderedPattern(2, 2, (("e", "n"),))
    with pytest.raises(ValueError):
        OrderedPattern.from_rows(["ex"])
    for pat in NAMED_PATTERNS.values():
        assert OrderedPattern.from_json(pat.to_json()) == pat
    assert NAMED_PATTERNS["M2"].is_matching()
    assert not NAMED_PATTERNS["familyM"].is_matching()


@st.composite
def ordered_graphs(draw, max_n=12):
    n = draw(st.integers(4, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@given(ordered_graphs(), st.sampled_from(sorted(NAMED_PATTERNS)), st.data())
@settings(max_examples=200, deadline=None)
def test_search_matches_naive(G, name, data):
    pat = NAMED_PATTERNS[name]
    split = data.draw(st.one_of(st.none(), st.integers(0, G.n)))
    assert contains_pattern(G, split, pat) == contains_pattern_naive(G, split, pat)


@pytest.mark.parametrize("n", [18, 25])
def test_search_matches_naive_larger(n):
    rng = random.Random(n)
    for density in (0.1, 0.3):
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < density]
        G = Graph.from_edges(n, edges)
        for name in ("double_cherry", "M1"):
            pat = NAMED_PATTERNS[name]
            assert contains_pattern(G, n // 2, pat) == contains_pattern_naive(G, n // 2, pat)


def test_search_budget():
    G = Graph.from_edges(30, [])
    with pytest.raises(BudgetExceeded):
        contains_pattern(G, None, NAMED_PATTERNS["M1"], budget=50)


def test_blowup_single_edge():
    M = OrderedPattern.from_rows(["e"])
    b = gen_blowup(M, 3)
    assert b.graph.n == 6 and b.graph.m == 3
    assert sorted(b.graph.edges()) == [(0, 3), (1, 4), (2, 5)]


@pytest.mark.parametrize("name", ["M0", "M1", "M2"])
@pytest.mark.parametrize("ell", [1, 2, 4])
def test_blowup_edge_count(name, ell):
    M = NAMED_PATTERNS[name]
    if not M.is_matching():
        with pytest.raises(ValueError):
            gen_blowup(M, ell)
        return
    b = gen_blowup(M, ell)
    assert b.graph.m == ell * len(M.matched_pairs())
    assert len(b.intervals) == M.n1 + M.n2


def test_m2_blowup():
    b = gen_blowup(NAMED_PATTERNS["M2"], 2)
    assert len(b.intervals) == 6 and b.graph.m == 6
    # intervals 1..6 with 1-4, 2-5, 3-6 matched
    assert sorted(b.matchings) == [(0, 3), (1, 4), (2, 5)]


def test_extract_from_clean_blowup():
    M = NAMED_PATTERNS["M2"]
    b = gen_blowup(M, 5)
    xs = extract_induced_matching(b.graph, b.intervals, b.matchings, M, seed=1, max_retries=1)
    assert xs is not None and induces_pattern(b.graph, xs, M)


@pytest.mark.parametrize("seed", range(5))
def test_extract_with_sparse_noise(seed):
    M = NAMED_PATTERNS["M2"]
    ell, k = 12, 6
    b = gen_blowup(M, ell)
    rng = random.Random(seed)
    edges = set(b.graph.edges())
    per_pair = ell * ell // (k * k)
    for s, t in itertools.combinations(range(k), 2):
        if (s, t) in b.matchings:
            continue
        for _ in range(per_pair):
            edges.add((rng.choice(b.intervals[s]), rng.choice(b.intervals[t])))
    G = Graph.from_edges(b.graph.n, sorted(edges))
    xs = extract_induced_matching(G, b.intervals, b.matchings, M, seed=seed)
    assert xs is not None and induces_pattern(G, xs, M)


def test_dense_non_pair_never_gives_invalid_witness():
    M = NAMED_PATTERNS["M2"]
    b = gen_blowup(M, 4)
    edges = set(b.graph.edges()) | {(x, y) for x in b.intervals[0] for y in b.intervals[1]}
    G = Graph.from_edges(b.graph.n, sorted(edges))
    assert extract_induced_matching(G, b.intervals, b.matchings, M, seed=0, max_retries=50) is None


def test_induces_pattern_checks_same_side():
    M = NAMED_PATTERNS["M2"]
    G = Graph.from_edges(6, [(0, 3), (1, 4), (2, 5)])
    assert induces_pattern(G, (0, 1, 2, 3, 4, 5), M)
    G = Graph.from_edges(6, [(0, 3), (1, 4), (2, 5), (0, 1)])
    assert not induces_pattern(G, (0, 1, 2, 3, 4, 5), M)
