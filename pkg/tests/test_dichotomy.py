import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from zarankiewicz_geom.dichotomy import (
    PipelineParams, RegimeError, RunLog, Step1, Verdict, check_step1, check_step2, check_step3,
    dense_patch, dichotomy_run, greedy_c4free, run_steps, step1_extract, step2_clean,
    step3_bipartize, verify_verdict,
)
from zarankiewicz_geom.graph import (
    Graph, average_degree, complete_bipartite, complete_graph, find_C4, gen_projective_plane, gnp,
    random_bipartite,
)


def test_params_validation():
    with pytest.raises(ValueError):
        PipelineParams(k=0)
    with pytest.raises(ValueError):
        PipelineParams(c=0)
    with pytest.raises(ValueError):
        PipelineParams(c=F(3, 2))


@pytest.mark.parametrize("tau,ell", [(1, 0), (199, 0), (200, 1), (639_999, 1), (640_000, 2)])
def test_ell_formula(tau, ell):
    assert PipelineParams(tau=tau).ell == ell


def test_ell_brute():
    for f in (1, 2, 200):
        for tau in range(1, 300):
            want = max([l for l in range(0, 10) if l == 0 or (f * l * l) ** l <= tau])
            assert PipelineParams(tau=tau, ell_factor=f).ell == want


def test_step1_complete_bipartite():
    G = complete_bipartite(4, 4)
    s1 = step1_extract(G)
    assert s1.d == 4
    assert len(s1.A1) + len(s1.B1) == 8
    assert all(len(G.adj[a] & s1.B1) >= 1 for a in s1.A1)
    assert check_step1(G, s1) == []


@pytest.mark.parametrize("G", [gen_projective_plane(5), gnp(20, F(3, 10), seed=4), gnp(40, F(1, 5), seed=1)],
                         ids=["gamma5", "gnp20", "gnp40"])
def test_step1_postconditions(G):
    assert check_step1(G, step1_extract(G)) == []


def test_step1_empty_graph():
    with pytest.raises(RegimeError):
        step1_extract(Graph.from_edges(3, []))


def test_step2_no_cross_edges_is_rejected():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    s1 = Step1(tuple(range(6)), frozenset({0, 1, 2}), frozenset({3, 4, 5}), F(2))
    s2 = step2_clean(G, s1, PipelineParams(tau=1, sample_factor=1, max_retries=5))
    assert not s2.accepted
    with pytest.raises(RegimeError):
        step2_clean(G, s1, PipelineParams(tau=1, sample_factor=3))


def planted(seed, v):
    """Random bipartite graph with a K_{2,v+1} planted across the two classes."""
    G = random_bipartite(150, 150, F(12, 100), seed=seed)
    edges = set(G.edges())
    for a in (0, 1):
        for b in range(150, 150 + v + 1):
            edges.add((a, b))
    return Graph.from_edges(300, sorted(edges))


def brute_step2(G, A2, B2, v):
    V = A2 | B2
    for x, y, z in itertools.combinations(sorted(V), 3):
        if G.has_edge(x, y) and G.has_edge(y, z) and G.has_edge(x, z):
            if {x, y, z} & A2 and {x, y, z} & B2:
                return False
    for a, a2 in itertools.combinations(sorted(A2), 2):
        common = G.adj[a] & G.adj[a2] & B2
        for S in itertools.combinations(sorted(common), v + 1):
            if all(not G.has_edge(p, q) for p, q in itertools.combinations(S, 2)):
                return False
    return True


def criterion_params(seed, **kw):
    base = dict(k=2, tau=2, v=6, sample_factor=8, deg_factor=24, ell_factor=1, seed=seed)
    base.update(kw)
    return PipelineParams(**base)


@pytest.mark.parametrize("seed", range(3))
def test_step2_removes_planted_biclique(seed):
    v = 5
    G = planted(seed, v)
    params = criterion_params(seed, v=v)
    s1 = step1_extract(G)
    s2 = step2_clean(G, s1, params)
    assert s2.accepted
    assert check_step2(G, s2, params) == []
    assert brute_step2(G, s2.A2, s2.B2, v)


def test_step3_on_bipartite_input():
    G = complete_bipartite(3, 3)
    params = PipelineParams(tau=1, ell_factor=1, deg_factor=1)
    s3 = step3_bipartize(G, {0, 1, 2}, {3, 4, 5}, params)
    assert s3.retry >= 0 and check_step3(G, s3) == []
    assert not any(G.adj[a] & s3.A3 for a in s3.A3)
    with pytest.raises(RegimeError):
        step3_bipartize(G, {0, 1, 2}, {3, 4, 5}, PipelineParams(tau=1))


@pytest.mark.parametrize("seed", range(4))
def test_pipeline_postconditions(seed):
    G = random_bipartite(150, 150, F(12, 100), seed=seed)
    tr = run_steps(G, criterion_params(seed))
    assert tr.violations == []
    if not tr.stopped:
        s3 = tr.step3
        assert all(len(s3.N[a] & s3.B3) == s3.ell for a in s3.A3)


def test_greedy_c4free_examples():
    G = gen_projective_plane(7)
    assert greedy_c4free(G, 8) == tuple(range(G.n))
    H = greedy_c4free(complete_bipartite(2, 2), 1)
    assert len(H) == 3
    assert greedy_c4free(complete_graph(6), 3) is None


@given(st.integers(4, 14), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_greedy_output_is_c4_free(n, seed):
    G = gnp(n, F(1, 2), seed=seed)
    H = greedy_c4free(G, 1)
    if H is not None:
        sub, _ = G.induced(H)
        assert find_C4(sub) is None and average_degree(sub) >= 1


def test_verify_examples():
    K7 = complete_graph(7)
    assert verify_verdict(K7, Verdict.dense_patch(range(6)), PipelineParams(k=10, c=F(2, 5)))
    G2 = gen_projective_plane(2)
    assert not verify_verdict(G2, Verdict.c4free(range(G2.n)), PipelineParams(k=4))
    assert verify_verdict(G2, Verdict.inconclusive("x"), PipelineParams())


def mutate(verdict, n, rng, kind):
    vs = list(verdict.vertices)
    if kind == "drop":
        vs.pop(rng.randrange(len(vs)))
    elif kind == "dup":
        vs.append(vs[0])
    elif kind == "range":
        vs[rng.randrange(len(vs))] = n + rng.randrange(5)
    elif kind == "negative":
        vs[0] = -1
    elif kind == "retag":
        other = "DensePatch" if verdict.tag == "C4Free" else "C4Free"
        return Verdict(other, tuple(vs))
    elif kind == "grow":
        vs = vs + [x for x in range(n) if x not in vs][:1]
    return Verdict(verdict.tag, tuple(vs))


@given(st.sampled_from(["drop", "dup", "range", "negative", "retag"]), st.integers(0, 1000))
@settings(max_examples=80, deadline=None)
def test_corrupted_certificates_fail(kind, seed):
    rng = random.Random(seed)
    gamma = gen_projective_plane(7)
    good = Verdict.c4free(range(gamma.n))
    p = PipelineParams(k=8)
    assert verify_verdict(gamma, good, p)
    assert not verify_verdict(gamma, mutate(good, gamma.n, rng, kind), p)
    K7 = complete_graph(7)
    dp = Verdict.dense_patch(range(6))
    q = PipelineParams(k=10, c=F(2, 5))
    assert not verify_verdict(K7, mutate(dp, 7, rng, kind), q)


def test_dense_patch_grow_breaks_size():
    K7 = complete_graph(7)
    dp = Verdict.dense_patch(range(6))
    assert not verify_verdict(K7, mutate(dp, 7, random.Random(0), "grow"), PipelineParams(c=F(2, 5)))


def test_run_examples():
    v = dichotomy_run(complete_graph(7), PipelineParams(k=10, c=F(2, 5)))
    assert v.tag == "DensePatch" and len(v.vertices) == 6
    assert complete_graph(7).edges_within(v.vertices) == 15
    G = gen_projective_plane(7)
    v = dichotomy_run(G, PipelineParams(k=8, c=F(2, 5), seed=7))
    assert v == Verdict.c4free(range(G.n))


@pytest.mark.parametrize("seed", range(3))
def test_run_random_bipartite(seed):
    G = random_bipartite(40, 40, F(1, 2), seed=seed)
    params = PipelineParams(k=3, c=F(1, 8), seed=seed)
    log = RunLog()
    v = dichotomy_run(G, params, log)
    assert verify_verdict(G, v, params)
    assert log.stages


def test_run_deterministic():
    G = random_bipartite(150, 150, F(12, 100), seed=9)
    params = criterion_params(9)
    assert dichotomy_run(G, params) == dichotomy_run(G, params)


def test_dense_patch_exhaustive_vs_brute():
    G = gnp(10, F(1, 2), seed=2)
    d = -(-G.m * 2 // G.n)
    best = max(G.edges_within(U) for U in itertools.combinations(range(10), d))
    U = dense_patch(G, F(best, d * d))
    assert U is not None and G.edges_within(U) == best
    assert dense_patch(G, F(best + 1, d * d)) is None
