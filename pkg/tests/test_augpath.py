import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgeted_matching.augpath import (
    canonical,
    decompose_pq,
    enumerate_augmenting_paths,
    find_short_augmenting_path,
    ratio_bound,
    short_path_free_ratio_check,
    shortest_augmenting_containing,
    shortest_augmenting_from,
)
from budgeted_matching.core import Graph, Matching, is_augmenting, path_edges
from budgeted_matching.errors import EdgeInMatching, PreconditionViolated, StartMatched

from helpers import brute_augmenting_paths, random_graph, random_matching, random_pq_triple


def path_graph(n):
    g = Graph()
    for v in range(n):
        g.add_vertex(v)
    for v in range(n - 1):
        g.add_edge(v, v + 1)
    return g


def test_ratio_bound_values():
    assert ratio_bound(2) == Fraction(1, 2)
    assert ratio_bound(4) == Fraction(2, 3)
    assert ratio_bound(6) == Fraction(3, 4)


def test_shortest_from_single_edge():
    g = path_graph(2)
    assert shortest_augmenting_from(g, Matching(), 0, 1) == (0, 1)


def test_shortest_from_respects_budget():
    g = path_graph(4)
    m = Matching([(1, 2)])
    assert shortest_augmenting_from(g, m, 0, 1) is None
    assert shortest_augmenting_from(g, m, 0, 3) == (0, 1, 2, 3)


def test_shortest_from_rejects_matched_start():
    g = path_graph(2)
    with pytest.raises(StartMatched):
        shortest_augmenting_from(g, Matching([(0, 1)]), 0, 3)


def test_shortest_from_prefers_shorter():
    # 0 - 1 = 2 - 3 and 0 - 4
    g = path_graph(4)
    g.add_vertex(4)
    g.add_edge(0, 4)
    assert shortest_augmenting_from(g, Matching([(1, 2)]), 0, 3) == (0, 4)


def test_containing_edge_at_the_end():
    # 0 - 1 = 2 - 3 = 4 - 5 with edge (0, 1) the newest
    g = path_graph(6)
    m = Matching([(1, 2), (3, 4)])
    assert shortest_augmenting_containing(g, m, (0, 1), 3) is None
    assert shortest_augmenting_containing(g, m, (0, 1), 5) == (0, 1, 2, 3, 4, 5)


def test_containing_both_ends_exposed():
    g = path_graph(4)
    assert shortest_augmenting_containing(g, Matching(), (1, 2), 3) == (1, 2)


def test_containing_rejects_matched_edge():
    g = path_graph(2)
    with pytest.raises(EdgeInMatching):
        shortest_augmenting_containing(g, Matching([(0, 1)]), (0, 1), 3)


def test_enumerate_on_path():
    g = path_graph(4)
    assert enumerate_augmenting_paths(g, Matching([(1, 2)]), 3) == [(0, 1, 2, 3)]
    assert enumerate_augmenting_paths(g, Matching([(1, 2)]), 1) == []


def test_enumerate_triangle_is_nonbipartite():
    g = Graph()
    for v in range(3):
        g.add_vertex(v)
    for e in [(0, 1), (1, 2), (0, 2)]:
        g.add_edge(*e)
    assert enumerate_augmenting_paths(g, Matching(), 1) == [(0, 1), (0, 2), (1, 2)]


def test_canonical():
    assert canonical((5, 2, 1)) == (1, 2, 5)
    assert canonical((1, 2, 5)) == (1, 2, 5)


def test_decompose_simple():
    # M empty, P = <b, c>, Q = <a, b, c, d> relative to {(b, c)}
    x, y = decompose_pq(Matching(), (1, 2), (0, 1, 2, 3))
    assert (x, y) == ((0, 1), (2, 3))


def test_decompose_rejects_bad_q():
    with pytest.raises(PreconditionViolated):
        decompose_pq(Matching(), (1, 2), (0, 1))


def test_short_path_free_ratio_check():
    assert short_path_free_ratio_check(2, 3, 4)
    assert not short_path_free_ratio_check(1, 3, 4)


@settings(max_examples=150, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    n=st.integers(2, 8),
    p=st.floats(0.1, 0.9),
    bip=st.booleans(),
    max_edges=st.sampled_from([1, 3, 5, 7]),
)
def test_enumeration_matches_brute_force(seed, n, p, bip, max_edges):
    rng = random.Random(seed)
    g = random_graph(rng, n, p, bip)
    m = random_matching(rng, g)
    assert enumerate_augmenting_paths(g, m, max_edges) == brute_augmenting_paths(g, m, max_edges)


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(2, 8), max_edges=st.sampled_from([1, 3, 5]))
def test_shortest_from_is_shortest(seed, n, max_edges):
    rng = random.Random(seed)
    g = random_graph(rng, n, 0.5)
    m = random_matching(rng, g)
    all_paths = brute_augmenting_paths(g, m, max_edges)
    for v in g.vertices():
        if m.is_matched(v):
            continue
        got = shortest_augmenting_from(g, m, v, max_edges)
        mine = [q for q in all_paths if v in (q[0], q[-1])]
        if not mine:
            assert got is None
        else:
            assert got[0] == v and is_augmenting(m, got)
            assert len(got) == min(len(q) for q in mine)


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(2, 8), max_edges=st.sampled_from([1, 3, 5]))
def test_containing_is_shortest(seed, n, max_edges):
    rng = random.Random(seed)
    g = random_graph(rng, n, 0.5)
    m = random_matching(rng, g)
    all_paths = brute_augmenting_paths(g, m, max_edges)
    for e in g.edges():
        if e in m:
            continue
        got = shortest_augmenting_containing(g, m, e, max_edges)
        mine = [q for q in all_paths if e in path_edges(q)]
        if not mine:
            assert got is None
        else:
            assert is_augmenting(m, got) and e in path_edges(got)
            assert (len(got), got) == min((len(q), q) for q in mine)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_find_short_agrees_with_enumeration(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 9), 0.4)
    m = random_matching(rng, g)
    hit = find_short_augmenting_path(g, m, 5)
    listing = enumerate_augmenting_paths(g, m, 5)
    assert (hit is None) == (not listing)
    if hit is not None:
        assert hit in listing


def check_decomposition(m, p, q, x, y):
    ex, ey = set(path_edges(x)), set(path_edges(y))
    assert not ex & ey
    assert ex | ey <= set(path_edges(p)) | set(path_edges(q))
    assert sorted([x[0], x[-1], y[0], y[-1]]) == sorted([p[0], p[-1], q[0], q[-1]])
    assert is_augmenting(m, x) and is_augmenting(m, y)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_decompose_property(seed):
    triple = random_pq_triple(random.Random(seed), max_n=10)
    if triple is None:
        return
    _, m, p, q = triple
    x, y = decompose_pq(m, p, q)
    check_decomposition(m, p, q, x, y)
