"""Vertex coordinates in 2 or 3 dimensions: spectral and spring-electrical layouts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import SequenceGraph, adjacency_matrix, adjacency_operator
from .spectral import DENSE_MAX_N, lanczos_extremal


class DegenerateEmbedding(ValueError):
    pass


class EmbedMethod(enum.Enum):
    SPECTRAL = "spectral"
    SPRING = "spring"


@dataclass(frozen=True)
class Embedding:
    coords: np.ndarray  # (n, dims)
    method: EmbedMethod
    seed: int = 0
    iterations: int = 0

    @property
    def dims(self) -> int:
        return self.coords.shape[1]


def _check_dims(g: SequenceGraph, dims: int) -> None:
    if dims not in (2, 3):
        raise ValueError(f"dims must be 2 or 3, got {dims}")
    if g.n < dims + 1:
        raise ValueError(f"need at least {dims + 1} vertices for a {dims}-d embedding")


def spectral_embedding(g: SequenceGraph, dims: int = 2, seed: int = 0) -> Embedding:
    """Unit eigenvectors of L = 4I - A for the ``dims`` smallest nonzero eigenvalues."""
    _check_dims(g, dims)
    n = g.n
    if n <= DENSE_MAX_N:
        L = 4.0 * np.eye(n) - adjacency_matrix(g, sparse=False)
        _, vecs = np.linalg.eigh(L)
        # column 0 is the constant vector for eigenvalue 0 (the graph is connected)
        coords = vecs[:, 1 : dims + 1]
    else:
        ones = np.full((n, 1), 1.0 / math.sqrt(n))
        # largest adjacency eigenvalues below 4 are the smallest nonzero Laplacian ones
        vals, vecs = lanczos_extremal(adjacency_operator(g), dims, deflate=ones, seed=seed)
        coords = vecs[:, ::-1][:, :dims]
    coords = coords - coords.mean(axis=0)
    coords = coords / np.linalg.norm(coords, axis=0)
    return Embedding(np.ascontiguousarray(coords), EmbedMethod.SPECTRAL, seed, 0)


def spring_layout(
    g: SequenceGraph,
    dims: int = 2,
    seed: int = 0,
    iterations: int = 500,
    *,
    record_edge_length: list | None = None,
) -> Embedding:
    """Fruchterman-Reingold layout in the unit box.

    Attraction d^2/k along each edge (weighted by multiplicity), repulsion k^2/d
    between all pairs, displacement capped by a linearly cooling temperature.
    ``record_edge_length``, if given, receives the total edge length before
    the first step and after every step.
    """
    _check_dims(g, dims)
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = g.n
    rng = np.random.Generator(np.random.PCG64(seed))
    pos = rng.random((n, dims))
    k = math.sqrt(1.0 / n)
    t0 = 0.02  # hotter starts overshoot and undo the early contraction
    e = np.asarray(g.edges)
    src, dst, w = e[:, 0], e[:, 1], e[:, 2].astype(float)

    def edge_length():
        return float((w * np.linalg.norm(pos[src] - pos[dst], axis=1)).sum())

    if record_edge_length is not None:
        record_edge_length.append(edge_length())

    for it in range(iterations):
        temp = t0 * (1.0 - it / iterations)
        delta = pos[:, None, :] - pos[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", delta, delta)
        np.fill_diagonal(dist2, np.inf)
        # k^2/d along the unit vector delta/d
        disp = np.einsum("ij,ijk->ik", (k * k) / dist2, delta)

        d = pos[src] - pos[dst]
        dl = np.linalg.norm(d, axis=1)
        # d^2/k along the unit vector d/|d|
        pull = (w * dl / k)[:, None] * d
        np.subtract.at(disp, src, pull)
        np.add.at(disp, dst, pull)

        length = np.linalg.norm(disp, axis=1)
        scale = np.where(length > 0, np.minimum(length, temp) / np.where(length > 0, length, 1.0), 0.0)
        pos = pos + disp * scale[:, None]
        if record_edge_length is not None:
            record_edge_length.append(edge_length())

    return Embedding(pos, EmbedMethod.SPRING, seed, iterations)


def normalize(e: Embedding) -> Embedding:
    """Center at the origin and scale so the farthest point has norm 1."""
    coords = np.asarray(e.coords, dtype=float)
    if not np.all(np.isfinite(coords)):
        raise ValueError("coordinates must be finite")
    centered = coords - coords.mean(axis=0)
    radius = float(np.linalg.norm(centered, axis=1).max())
    if radius <= 1e-12 * max(1.0, float(np.abs(coords).max())):
        raise DegenerateEmbedding("all points coincide")
    return Embedding(centered / radius, e.method, e.seed, e.iterations)


def local_consistency(g: SequenceGraph, e: Embedding, quantile: float = 0.05) -> float:
    """Fraction of graph edges whose endpoints lie within the ``quantile`` shortest pairwise distances.

    A proxy for visible geometric coherence; it is not a standard measure.
    """
    X = e.coords
    n = len(X)
    iu = np.triu_indices(n, 1)
    diff = X[:, None, :] - X[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    cutoff = np.quantile(dist[iu], quantile)
    pairs = np.asarray([(u, v) for u, v, _ in g.edges])
    return float(np.mean(dist[pairs[:, 0], pairs[:, 1]] <= cutoff))
