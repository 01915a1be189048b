"""Truncated Jacobi matrices: Sturm-count bisection eigensolver and Gauss rules.

The N-by-N symmetrized truncation of a coefficient stream has the zeros of
P_N as its eigenvalues.  Counting is done through the signs of the LDL^T
pivots of (T - x I), which carry the same sign pattern as the classical
Sturm minor sequence with no risk of under/overflow, so eigenvalue counts
are exact and the "at most r outliers per side" diagnostics can rely on
them.  Bisection runs inside the Gershgorin interval and always converges.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .recurrence import CoefficientSequence, eval_orthonormal

DEFAULT_TOL = 1e-13
_MAX_BISECT = 200


@dataclass(frozen=True)
class TridiagonalN:
    """Symmetric tridiagonal truncation: diag b_0..b_{N-1}, offdiag a_1..a_{N-1}."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", np.asarray(self.diag, dtype=float))
        object.__setattr__(self, "offdiag", np.asarray(self.offdiag, dtype=float))
        if self.offdiag.shape != (max(len(self.diag) - 1, 0),):
            raise ValueError("offdiagonal length must be N-1")
        if np.any(self.offdiag <= 0):
            raise ValueError("offdiagonal entries must be strictly positive")

    @property
    def size(self) -> int:
        return len(self.diag)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the stream's measure: positive weights, increasing nodes."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


def truncate(seq: CoefficientSequence, N: int) -> TridiagonalN:
    """First N rows/columns in symmetric form (square roots of a2)."""
    if N < 1:
        raise ValueError("truncation size must be >= 1")
    diag = np.array([seq.b(k) for k in range(N)])
    off = np.array([seq.a(k) for k in range(1, N)])
    return TridiagonalN(diag, off)


def gershgorin_interval(tri: TridiagonalN) -> tuple[float, float]:
    n = tri.size
    e = np.concatenate(([0.0], tri.offdiag, [0.0]))
    radius = e[:n] + e[1 : n + 1]
    return float(np.min(tri.diag - radius)), float(np.max(tri.diag + radius))


def sturm_count(tri: TridiagonalN, x) -> np.ndarray | int:
    """Number of eigenvalues strictly below each probe point.

    Signs of the LDL^T pivots q_k = (b_k - x) - a_k^2 / q_{k-1}; by Sylvester
    inertia the negative pivots count eigenvalues below x.  Vanishing pivots
    are nudged to -pivmin, which cannot change counts at bisection scale.
    """
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    d = tri.diag
    e2 = tri.offdiag**2
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max(initial=0.0)))
    q = d[0] - xs
    q[np.abs(q) < pivmin] = -pivmin
    counts = (q < 0).astype(np.int64)
    for k in range(1, tri.size):
        q = d[k] - xs - e2[k - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        counts += q < 0
    return int(counts[0]) if scalar else counts


def eigenvalues(tri: TridiagonalN, tol: float = DEFAULT_TOL, indices=None) -> np.ndarray:
    """Selected eigenvalues (all by default) to absolute accuracy tol, ascending."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = tri.size
    idx = np.arange(n) if indices is None else np.asarray(sorted(indices), dtype=int)
    if len(idx) == 0:
        return np.array([])
    if np.any((idx < 0) | (idx >= n)):
        raise IndexError("eigenvalue index out of range")
    glo, ghi = gershgorin_interval(tri)
    lo = np.full(len(idx), glo - tol)
    hi = np.full(len(idx), ghi + tol)
    wanted = idx + 1
    for _ in range(_MAX_BISECT):
        if np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        counts = sturm_count(tri, mid)
        go_left = counts >= wanted
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
    return 0.5 * (lo + hi)


def zeros(seq: CoefficientSequence, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Zeros of P_n: the spectrum of the n-truncation."""
    return eigenvalues(truncate(seq, n), tol=tol)


def extreme_eigenvalues(
    tri: TridiagonalN, k_low: int, k_high: int, tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """The k_low smallest and k_high largest eigenvalues."""
    n = tri.size
    low = eigenvalues(tri, tol=tol, indices=range(min(k_low, n)))
    high = eigenvalues(tri, tol=tol, indices=range(max(n - k_high, 0), n))
    return low, high


def gauss_rule(seq: CoefficientSequence, N: int, tol: float = DEFAULT_TOL) -> QuadratureRule:
    """Gauss rule from the stream: nodes are truncation eigenvalues, weights
    are reciprocal Christoffel sums 1 / sum_{j<N} p_j(x_k)^2.

    Exact for polynomials of degree <= 2N-1 against the underlying measure.
    """
    nodes = eigenvalues(truncate(seq, N), tol=tol)
    vals = eval_orthonormal(seq, N - 1, np.asarray(nodes))
    weights = 1.0 / sum(v * v for v in vals.values)
    return QuadratureRule(nodes=np.asarray(nodes), weights=np.asarray(weights))
