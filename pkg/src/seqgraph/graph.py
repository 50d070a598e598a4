"""The two-cycle 4-regular multigraph of a list of distinct values.

Vertex ``i`` is the ``i``-th input value. Edges come from two spanning cycles:
the input order ``i -> i+1 (mod n)`` and the sorted order ``pi[j] -> pi[j+1]
(mod n)``. An edge present in both cycles has multiplicity 2.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .core import Value, as_value
from .sequences import check_distinct, two_powers_term

DENSE_LIMIT = 6000


class TooFewVertices(ValueError):
    pass


class DuplicateValues(ValueError):
    pass


@dataclass(frozen=True)
class SequenceGraph:
    values: tuple
    sort_perm: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (u, v, multiplicity), u < v, sorted

    @property
    def n(self) -> int:
        return len(self.values)

    def edge_multiset(self) -> Counter:
        return Counter({(u, v): m for u, v, m in self.edges})

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v, m in self.edges:
            deg[u] += m
            deg[v] += m
        return deg


def _cycle_pairs(order: Sequence[int]) -> Iterable[tuple[int, int]]:
    n = len(order)
    for i in range(n):
        u, v = order[i], order[(i + 1) % n]
        yield (u, v) if u < v else (v, u)


def build_graph(values: Iterable) -> SequenceGraph:
    vals = tuple(as_value(v) for v in values)
    n = len(vals)
    if n < 3:
        raise TooFewVertices(f"need at least 3 values, got {n}")
    if not check_distinct(vals):
        raise DuplicateValues("values must be pairwise distinct")
    perm = tuple(sorted(range(n), key=vals.__getitem__))
    counts = Counter(_cycle_pairs(range(n)))
    counts.update(_cycle_pairs(perm))
    edges = tuple(sorted((u, v, m) for (u, v), m in counts.items()))
    return SequenceGraph(vals, perm, edges)


def adjacency_matrix(g: SequenceGraph, sparse: bool | None = None):
    """Symmetric edge-multiplicity matrix; dense ``int64`` up to 6000 vertices, CSR beyond."""
    if sparse is None:
        sparse = g.n > DENSE_LIMIT
    e = np.asarray(g.edges, dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    data = np.concatenate([e[:, 2], e[:, 2]])
    if sparse:
        return sp.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))
    A = np.zeros((g.n, g.n), dtype=np.int64)
    A[rows, cols] = data
    return A


def adjacency_operator(g: SequenceGraph) -> sp.csr_matrix:
    """Float CSR adjacency for matrix-vector products."""
    return adjacency_matrix(g, sparse=True).astype(float)


def is_connected(g: SequenceGraph) -> bool:
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


@dataclass(frozen=True)
class GraphStats:
    n: int
    edge_count: int
    max_multiplicity: int
    is_connected: bool
    double_edge_count: int


def graph_stats(g: SequenceGraph) -> GraphStats:
    mults = [m for _, _, m in g.edges]
    return GraphStats(
        n=g.n,
        edge_count=sum(mults),
        max_multiplicity=max(mults),
        is_connected=is_connected(g),
        double_edge_count=sum(1 for m in mults if m == 2),
    )


# ---------------------------------------------------------------- two powers of 2


def two_powers_vertices(N: int) -> list[tuple[int, int]]:
    """Rows k = 0..N of (k, n), 0 <= n <= k, minus the zero entry (n = k) of odd rows."""
    return [(k, n) for k in range(N + 1) for n in range(k + 1 - (k % 2))]


def _row_last(k: int) -> int:
    return k - (k % 2)


def predicted_two_powers_adjacency(N: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Closed-form adjacency of the graph of (-2)^k + 2^n read by rows up to row ``N``.

    Rows are increasing in ``n``; even rows are positive and ordered upward in
    ``k``, odd rows are negative and ordered downward in ``k``. Hence:

    * consecutive entries of a row are adjacent in both orders (multiplicity 2);
    * input order joins the last entry of row ``k`` to the first of row ``k+1``,
      and wraps from the last entry of row ``N`` back to ``(0, 0)``;
    * sorted order joins ``(k, k)`` to ``(k+2, 0)`` for even ``k``, and
      ``(k+2, k+1)`` to ``(k, 0)`` for odd ``k``;
    * sorted order bridges the signs with ``(1, 0) - (0, 0)`` (values -1 and 2)
      and wraps from the largest value, the last entry of the top even row, to
      the smallest, the first entry of the top odd row.

    Returns the matrix and the vertex labels in row-read order.
    """
    if N < 2:
        raise ValueError("need N >= 2 for at least three vertices")
    verts = two_powers_vertices(N)
    index = {v: i for i, v in enumerate(verts)}
    A = np.zeros((len(verts), len(verts)), dtype=np.int64)

    def link(a, b, m=1):
        i, j = index[a], index[b]
        A[i, j] += m
        A[j, i] += m

    for k in range(N + 1):
        for n in range(_row_last(k)):
            link((k, n), (k, n + 1), 2)
        if k < N:
            link((k, _row_last(k)), (k + 1, 0))
        if k + 2 <= N:
            if k % 2 == 0:
                link((k, k), (k + 2, 0))
            else:
                link((k + 2, k + 1), (k, 0))
    link((N, _row_last(N)), (0, 0))
    link((1, 0), (0, 0))
    top_even = N if N % 2 == 0 else N - 1
    top_odd = N if N % 2 == 1 else N - 1
    link((top_even, top_even), (top_odd, 0))
    return A, verts


def two_powers_graph(N: int) -> SequenceGraph:
    """Graph built from the zero-free row-read stream up to row ``N``."""
    return build_graph(two_powers_term(k, n) for k, n in two_powers_vertices(N))
