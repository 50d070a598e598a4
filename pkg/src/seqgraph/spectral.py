"""Adjacency spectrum, second eigenvalue, structure verdict and Rayleigh witness.

Two solvers are provided. The dense path diagonalizes the full matrix with
LAPACK (``numpy.linalg.eigh``). The iterative path is a Lanczos process with
full reorthogonalization on the sparse adjacency operator, restricted to the
orthogonal complement of the all-ones vector (the known eigenpair for 4), and
reads off Ritz pairs at both ends of the spectrum.

Naming of the "second eigenvalue":

* ``lambda2_signed``  the eigenvalue ranked second when sorting by decreasing
  absolute value, keeping its sign (this is what a ``[[2]]`` lookup into an
  absolute-value ordered eigenvalue list returns; for near-bipartite graphs it
  is close to -4);
* ``lambda2_abs``     its absolute value, i.e. ``max(second_largest, -smallest)``;
* ``second_largest``  the second entry of the signed descending ordering; the
  spectral gap ``4 - second_largest`` is the minimum Rayleigh quotient over
  mean-zero vectors.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .graph import SequenceGraph, adjacency_operator

SQRT12 = math.sqrt(12.0)
DENSE_MAX_N = 2000


class ConvergenceFailure(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class NotMeanZero(ValueError):
    pass


class ZeroVector(ValueError):
    pass


class Method(enum.Enum):
    DENSE = "dense"
    ITERATIVE = "iterative"


@dataclass
class Spectrum:
    eigen_abs_desc: np.ndarray
    eigen_signed_desc: np.ndarray
    lambda1: float
    lambda2_abs: float
    lambda2_signed: float
    second_largest: float
    smallest: float
    method: Method
    residual: float
    # unit eigenvectors for lambda2_signed and second_largest
    lambda2_vector: np.ndarray = field(repr=False)
    second_vector: np.ndarray = field(repr=False)


def _abs_desc(vals: np.ndarray) -> np.ndarray:
    # ties in |x| put the positive value first
    order = np.lexsort((-vals, -np.abs(vals)))
    return vals[order]


def _as_operator(A):
    if isinstance(A, SequenceGraph):
        return adjacency_operator(A)
    if sp.issparse(A):
        return A.tocsr().astype(float)
    return np.asarray(A, dtype=float)


def _check_symmetric(A) -> None:
    if sp.issparse(A):
        diff = abs(A - A.T).max()
        diag = abs(A.diagonal()).max()
    else:
        diff = np.abs(A - A.T).max()
        diag = np.abs(np.diag(A)).max()
    if diff > 0 or diag > 0:
        raise ValueError("adjacency must be symmetric with zero diagonal")


def _pick_vectors(vals, vecs, lam1_index):
    """Indices of lambda2 (by |.|) and of the second largest among non-lambda1 pairs."""
    mask = np.ones(len(vals), dtype=bool)
    mask[lam1_index] = False
    idx = np.flatnonzero(mask)
    rest = vals[idx]
    order = np.lexsort((-rest, -np.abs(rest)))
    i_abs = idx[order[0]]
    i_top = idx[np.argmax(rest)]
    return i_abs, i_top


def _residual(A, vals, vecs) -> float:
    R = A @ vecs - vecs * vals
    return float(np.max(np.linalg.norm(R, axis=0)))


def dense_spectrum(A) -> Spectrum:
    M = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
    vals, vecs = np.linalg.eigh(M)
    lam1_index = int(np.argmax(vals))
    i_abs, i_top = _pick_vectors(vals, vecs, lam1_index)
    picked = [lam1_index, i_abs, i_top]
    res = _residual(M, vals[picked], vecs[:, picked])
    signed = vals[::-1].copy()
    return Spectrum(
        eigen_abs_desc=_abs_desc(vals),
        eigen_signed_desc=signed,
        lambda1=float(vals[lam1_index]),
        lambda2_abs=float(abs(vals[i_abs])),
        lambda2_signed=float(vals[i_abs]),
        second_largest=float(vals[i_top]),
        smallest=float(vals[0]),
        method=Method.DENSE,
        residual=res,
        lambda2_vector=vecs[:, i_abs].copy(),
        second_vector=vecs[:, i_top].copy(),
    )


def lanczos_extremal(
    A,
    k: int = 3,
    *,
    deflate: np.ndarray | None = None,
    seed: int = 0,
    tol: float = 1e-10,
    max_matvecs: int | None = None,
    check_every: int = 10,
):
    """Lanczos with full reorthogonalization; returns the ``k`` lowest and ``k`` highest Ritz pairs.

    ``deflate`` holds orthonormal columns that are projected out of every
    Krylov vector. Iteration stops when every returned Ritz pair has estimated
    residual ``beta_m * |s_mi| <= tol`` or the Krylov space is exhausted.
    Returns ``(values, vectors)`` with values ascending.
    """
    n = A.shape[0]
    if deflate is None:
        deflate = np.zeros((n, 0))
    dim = n - deflate.shape[1]
    if max_matvecs is None:
        max_matvecs = 10 * n
    max_steps = min(dim, max_matvecs)
    k = min(k, max(1, dim // 2))

    rng = np.random.default_rng(seed)
    q = rng.standard_normal(n)
    q -= deflate @ (deflate.T @ q)
    q /= np.linalg.norm(q)

    Q = np.empty((max_steps, n))
    alpha = np.empty(max_steps)
    beta = np.empty(max_steps)
    m = 0
    best_res = math.inf
    next_check = max(2 * k, check_every)
    while True:
        Q[m] = q
        w = A @ q
        alpha[m] = q @ w
        # full reorthogonalization against the basis and the deflated space, twice
        for _ in range(2):
            w -= Q[: m + 1].T @ (Q[: m + 1] @ w)
            w -= deflate @ (deflate.T @ w)
        b = float(np.linalg.norm(w))
        beta[m] = b
        m += 1
        exhausted = b <= 1e-12 * max(1.0, abs(alpha[m - 1])) or m >= max_steps
        if m >= next_check or exhausted:
            # checks cost O(m^3); space them out as the basis grows
            next_check = max(m + check_every, int(m * 1.1))
            T = np.diag(alpha[:m]) + np.diag(beta[: m - 1], 1) + np.diag(beta[: m - 1], -1)
            theta, S = np.linalg.eigh(T)
            want = np.r_[np.arange(k), np.arange(m - k, m)]
            est = b * np.abs(S[-1, want])
            best_res = float(est.max())
            if best_res <= tol or exhausted:
                vecs = Q[:m].T @ S[:, want]
                vecs /= np.linalg.norm(vecs, axis=0)
                if best_res > tol and m >= max_matvecs:
                    raise ConvergenceFailure(f"Lanczos budget of {max_matvecs} matvecs exhausted", best_res)
                return theta[want], vecs
        q = w / b


def iterative_spectrum(A, k: int = 2, seed: int = 0, tol: float = 1e-10) -> Spectrum:
    """Extremal spectrum of a 4-regular adjacency via deflated Lanczos."""
    n = A.shape[0]
    ones = np.full((n, 1), 1.0 / math.sqrt(n))
    vals, vecs = lanczos_extremal(A, k, deflate=ones, seed=seed, tol=tol)
    lam1 = float(A @ ones[:, 0] @ ones[:, 0])
    all_vals = np.r_[lam1, vals]
    all_vecs = np.column_stack([ones, vecs])
    i_abs, i_top = _pick_vectors(all_vals, all_vecs, 0)
    res = _residual(A, all_vals, all_vecs)
    return Spectrum(
        eigen_abs_desc=_abs_desc(all_vals),
        eigen_signed_desc=np.sort(all_vals)[::-1],
        lambda1=lam1,
        lambda2_abs=float(abs(all_vals[i_abs])),
        lambda2_signed=float(all_vals[i_abs]),
        second_largest=float(all_vals[i_top]),
        smallest=float(vals[0]),
        method=Method.ITERATIVE,
        residual=res,
        lambda2_vector=all_vecs[:, i_abs].copy(),
        second_vector=all_vecs[:, i_top].copy(),
    )


def eigen_spectrum(A, method: Method | str | None = None, seed: int = 0) -> Spectrum:
    """Spectrum of an adjacency matrix (dense array, sparse matrix or graph).

    Dense for ``n <= 2000`` unless ``method`` says otherwise. The iterative
    path assumes the matrix is 4-regular so that the all-ones vector can be
    deflated.
    """
    M = _as_operator(A)
    _check_symmetric(M)
    n = M.shape[0]
    if method is None:
        method = Method.DENSE if n <= DENSE_MAX_N else Method.ITERATIVE
    method = Method(method)
    if method is Method.DENSE:
        return dense_spectrum(M)
    if not sp.issparse(M):
        M = sp.csr_matrix(M)
    row_sums = np.asarray(M.sum(axis=1)).ravel()
    if not np.allclose(row_sums, row_sums[0]):
        raise ValueError("iterative path needs a regular graph")
    return iterative_spectrum(M, seed=seed)


def lambda2(A, method=None) -> tuple[float, float]:
    s = eigen_spectrum(A, method)
    return s.lambda2_abs, s.lambda2_signed


# ---------------------------------------------------------------- verdicts


class Verdict(enum.Enum):
    RANDOM_LIKE = "random-like"
    STRUCTURED = "structured"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class StructureVerdict:
    verdict: Verdict
    lambda2_abs: float
    eps_rand: float
    tau_struct: float


def classify(lambda2_abs: float, n: int, eps_rand: float = 0.15, tau_struct: float = 3.90) -> StructureVerdict:
    """Random-like near the Ramanujan bound sqrt(12), structured near 4."""
    if not 0 <= lambda2_abs <= 4 + 1e-9:
        raise ValueError(f"|lambda2| = {lambda2_abs} outside [0, 4]")
    if lambda2_abs <= SQRT12 + eps_rand:
        v = Verdict.RANDOM_LIKE
    elif lambda2_abs >= tau_struct:
        v = Verdict.STRUCTURED
    else:
        v = Verdict.INDETERMINATE
    return StructureVerdict(v, lambda2_abs, eps_rand, tau_struct)


def alon_boppana_slack(n: int) -> float:
    return min(0.6, 2 * math.sqrt(3) * math.pi**2 / math.log(n) ** 2)


def alon_boppana_check(spectrum: Spectrum | float, n: int) -> bool:
    """Soft finite-n lower bound |lambda2| >= sqrt(12) - slack(n); warns when violated."""
    if n < 50:
        raise ValueError("the check is only meaningful for n >= 50")
    lam = spectrum.lambda2_abs if isinstance(spectrum, Spectrum) else float(spectrum)
    ok = lam >= SQRT12 - alon_boppana_slack(n)
    if not ok:
        warnings.warn(f"|lambda2| = {lam:.4f} is below the Alon-Boppana tolerance for n = {n}", stacklevel=2)
    return ok


# ---------------------------------------------------------------- Rayleigh witness


def rayleigh_quotient(g: SequenceGraph, f) -> float:
    """Sum over edges (with multiplicity) of (f(u) - f(v))^2, divided by |f|^2."""
    f = np.asarray(f, dtype=float)
    if f.shape != (g.n,):
        raise ValueError(f"vector has shape {f.shape}, expected ({g.n},)")
    norm2 = float(f @ f)
    if norm2 == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    if abs(f.sum()) > 1e-9 * math.sqrt(norm2) * math.sqrt(g.n):
        raise NotMeanZero("vector must be orthogonal to the constants")
    e = np.asarray(g.edges)
    diff = f[e[:, 0]] - f[e[:, 1]]
    return float(e[:, 2] @ (diff * diff) / norm2)


@dataclass(frozen=True)
class Partition:
    side: np.ndarray  # True where f(v) > 0
    cut_edges: int
    total_edges: int

    @property
    def cut_fraction(self) -> float:
        return self.cut_edges / self.total_edges


def sign_partition(g: SequenceGraph, eigvec) -> Partition:
    """Split into {f <= 0} and {f > 0} and count crossing edges with multiplicity."""
    f = np.asarray(eigvec, dtype=float)
    side = f > 0
    e = np.asarray(g.edges)
    crossing = side[e[:, 0]] != side[e[:, 1]]
    return Partition(side, int(e[crossing, 2].sum()), int(e[:, 2].sum()))
