from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqgraph.graph import (
    DuplicateValues,
    TooFewVertices,
    adjacency_matrix,
    build_graph,
    graph_stats,
    predicted_two_powers_adjacency,
    two_powers_graph,
    two_powers_vertices,
)

SEVEN = [1, 41, 42, 13, 56, 23, 73]


def _pairs(g):
    return {(g.values[u], g.values[v]) if g.values[u] < g.values[v] else (g.values[v], g.values[u]): m
            for u, v, m in g.edges}


def test_seven_vertex_example():
    g = build_graph(SEVEN)
    expected = {
        (1, 41): 1, (41, 42): 2, (13, 42): 1, (13, 56): 1, (23, 56): 1, (23, 73): 1, (1, 73): 2,
        (1, 13): 1, (13, 23): 1, (23, 41): 1, (42, 56): 1, (56, 73): 1,
    }
    assert _pairs(g) == expected
    A = adjacency_matrix(g)
    assert A[1, 2] == 2 and A[0, 1] == 1
    s = graph_stats(g)
    assert (s.n, s.edge_count, s.double_edge_count, s.is_connected) == (7, 14, 2, True)


def test_sort_permutation():
    g = build_graph(SEVEN)
    assert [g.values[i] for i in g.sort_perm] == sorted(SEVEN)


def test_triangle():
    g = build_graph([1, 2, 3])
    assert g.edges == ((0, 1, 2), (0, 2, 2), (1, 2, 2))
    A = adjacency_matrix(g)
    assert np.array_equal(A, 2 * (np.ones((3, 3), dtype=int) - np.eye(3, dtype=int)))
    assert graph_stats(g).double_edge_count == 3


def test_errors():
    with pytest.raises(TooFewVertices):
        build_graph([1, 2])
    with pytest.raises(DuplicateValues):
        build_graph([1, 2, 3, Fraction(2, 1)])
    with pytest.raises(DuplicateValues):
        build_graph([0.5, Fraction(1, 2), 7])


def test_sparse_and_dense_agree():
    g = build_graph(np.random.default_rng(0).random(300).tolist())
    assert np.array_equal(adjacency_matrix(g, sparse=True).toarray(), adjacency_matrix(g, sparse=False))


def test_mixed_value_types():
    g = build_graph([Fraction(1, 3), 0.3, 2, -1])
    assert [g.values[i] for i in g.sort_perm] == [-1, 0.3, Fraction(1, 3), 2]


distinct_floats = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False), min_size=3, max_size=80, unique=True
).filter(lambda xs: len({x + 0.0 for x in xs}) == len(xs))


@settings(max_examples=150, deadline=None)
@given(distinct_floats)
def test_invariants(xs):
    g = build_graph(xs)
    A = adjacency_matrix(g)
    assert (A.sum(axis=1) == 4).all()
    assert (np.diag(A) == 0).all()
    assert (A == A.T).all()
    assert A.max() <= 2
    assert graph_stats(g).is_connected
    assert graph_stats(g).edge_count == 2 * len(xs)


@settings(max_examples=100, deadline=None)
@given(distinct_floats)
def test_reversal_gives_isomorphic_graph(xs):
    n = len(xs)
    g = build_graph(xs)
    r = build_graph(xs[::-1])
    mapped = sorted(tuple(sorted((n - 1 - u, n - 1 - v))) + (m,) for u, v, m in r.edges)
    assert tuple(mapped) == g.edges


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=80, unique=True))
def test_monotone_transform_invariance(xs):
    g = build_graph(xs)
    assert build_graph([x**3 + Fraction(x, 7) - 5 for x in xs]).edges == g.edges
    assert build_graph([Fraction(1, 3) * x for x in xs]).edges == g.edges


def _literal_predicted(N):
    """Case rules transcribed as printed, with the parity indicator read on k."""
    verts = two_powers_vertices(N)
    index = {v: i for i, v in enumerate(verts)}
    A = np.zeros((len(verts), len(verts)), dtype=int)
    last = lambda k: k - (k % 2)
    for (k, m) in verts:
        for (l, n) in verts:
            val = 0
            if l == k and abs(m - n) == 1:
                val = 2
            elif l == k + 1 and m == last(k) and n == 0:
                val = 1
            elif l == k + 2 and m == last(k) and n == (k + 1) * (k % 2):
                val = 1
            elif (k, n) == (1, 0) and (l, m) == (N, last(N)):
                val = 1
            if val:
                A[index[(k, m)], index[(l, n)]] = val
                A[index[(l, n)], index[(k, m)]] = val
    return A


@pytest.mark.parametrize("N", range(2, 21))
def test_two_powers_closed_form(N):
    P, verts = predicted_two_powers_adjacency(N)
    g = two_powers_graph(N)
    assert [g.values[i] for i in range(g.n)] == [(-2) ** k + 2**n for k, n in verts]
    assert np.array_equal(P, adjacency_matrix(g))
    assert (np.diag(P) == 0).all() and (P.sum(axis=1) == 4).all()


def test_literal_case_rules_disagree_with_construction():
    # the printed rules miss the sign bridge and join odd rows end to end
    for N in (4, 7, 12):
        assert not np.array_equal(_literal_predicted(N), adjacency_matrix(two_powers_graph(N)))
