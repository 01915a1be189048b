"""Three-term recurrence engines for monic and orthonormal orthogonal polynomials.

A coefficient stream is a pair of index functions (b, a2) generating

    P_{k+1}(x) = (x - b_k) P_k(x) - a2_k P_{k-1}(x),    P_0 = 1, P_{-1} = 0,

with b_k real and a2_k > 0.  Streams are pure functions of the index, so the
degree is unbounded and nothing is cached.  Everything here is immutable and
side-effect free; evaluating many points in parallel is safe.

Evaluation is generic over the point type: a float gives floating values, a
numpy array evaluates all points at once, and a Fraction (on a stream with
exact accessors) runs the recurrence in exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .polynomials import DensePolynomial

MAX_DEGREE = 10**6


class EvaluationOverflowError(OverflowError):
    """Forward recurrence left the representable floating range."""


@dataclass(frozen=True)
class CoefficientSequence:
    """Recurrence coefficient stream: b(n) for n >= 0, a2(n) > 0 for n >= 1.

    ``b_exact``/``a2_exact`` are optional Fraction-valued accessors, present
    when the family is rational in the index (they back exact expansion and
    exact ODE residuals).
    """

    b: Callable[[int], float]
    a2: Callable[[int], float]
    b_exact: Optional[Callable[[int], Fraction]] = None
    a2_exact: Optional[Callable[[int], Fraction]] = None
    name: str = ""

    @property
    def has_exact(self) -> bool:
        return self.b_exact is not None and self.a2_exact is not None

    def a(self, n: int) -> float:
        return math.sqrt(self.a2(n))

    def __repr__(self) -> str:
        return f"CoefficientSequence({self.name or 'anonymous'})"


def from_exact(b_exact, a2_exact, name: str = "") -> CoefficientSequence:
    """Build a stream from exact accessors; float accessors are derived."""
    return CoefficientSequence(
        b=lambda n: float(b_exact(n)),
        a2=lambda n: float(a2_exact(n)),
        b_exact=b_exact,
        a2_exact=a2_exact,
        name=name,
    )


def from_table(bs: Sequence, a2s: Sequence, b_tail, a2_tail, name: str = "") -> CoefficientSequence:
    """Finitely many tabulated coefficients followed by constant tails."""
    bs = list(bs)
    a2s = list(a2s)  # a2s[k] is a2(k+1)

    def b(n):
        return float(bs[n]) if n < len(bs) else float(b_tail)

    def a2(n):
        return float(a2s[n - 1]) if 1 <= n <= len(a2s) else float(a2_tail)

    exactable = all(isinstance(v, (int, Fraction)) for v in [*bs, *a2s, b_tail, a2_tail])
    if exactable:
        def b_exact(n):
            return Fraction(bs[n]) if n < len(bs) else Fraction(b_tail)

        def a2_exact(n):
            return Fraction(a2s[n - 1]) if 1 <= n <= len(a2s) else Fraction(a2_tail)
    else:
        b_exact = a2_exact = None
    return CoefficientSequence(b, a2, b_exact, a2_exact, name=name)


def shift(seq: CoefficientSequence, r: int) -> CoefficientSequence:
    """Drop the first r rows and columns: b'(n) = b(n+r), a2'(n) = a2(n+r)."""
    if r < 0:
        raise ValueError("shift order must be >= 0")
    if r == 0:
        return seq
    b_exact = (lambda n: seq.b_exact(n + r)) if seq.b_exact else None
    a2_exact = (lambda n: seq.a2_exact(n + r)) if seq.a2_exact else None
    return CoefficientSequence(
        b=lambda n: seq.b(n + r),
        a2=lambda n: seq.a2(n + r),
        b_exact=b_exact,
        a2_exact=a2_exact,
        name=f"{seq.name or 'seq'}^({r})",
    )


@dataclass(frozen=True)
class EvaluationVector:
    """Values [P_0(x), ..., P_n(x)] of one family at one point."""

    n: int
    x: object
    values: tuple
    kind: str = "monic"

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError("evaluation vector must hold n+1 values")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def last(self):
        return self.values[-1]


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported cap {MAX_DEGREE}")


def _accessors(seq: CoefficientSequence, x):
    if isinstance(x, Fraction):
        if not seq.has_exact:
            raise TypeError("exact evaluation requested on a stream without exact accessors")
        return seq.b_exact, seq.a2_exact
    return seq.b, seq.a2


def _one_like(x):
    if isinstance(x, Fraction):
        return Fraction(1)
    if isinstance(x, np.ndarray):
        return np.ones_like(x, dtype=float)
    return 1.0


def _check_finite(values, x) -> None:
    if isinstance(x, Fraction):
        return
    last = values[-1]
    if not np.all(np.isfinite(last)):
        raise EvaluationOverflowError(
            "recurrence values overflowed; reduce the degree or move the point"
        )


def eval_monic(seq: CoefficientSequence, n: int, x) -> EvaluationVector:
    """All monic values P_0(x)..P_n(x) by the forward recurrence."""
    _check_degree(n)
    b, a2 = _accessors(seq, x)
    values = [_one_like(x)]
    prev = 0 * values[0]
    for k in range(n):
        cur = values[-1]
        values.append((x - b(k)) * cur - a2(k) * prev)
        prev = cur
    _check_finite(values, x)
    return EvaluationVector(n, x, tuple(values), kind="monic")


def eval_monic_with_derivative(seq: CoefficientSequence, n: int, x):
    """Monic values and derivatives, via the differentiated recurrence.

    P'_{k+1} = P_k + (x - b_k) P'_k - a2_k P'_{k-1}, with P'_0 = 0.
    """
    _check_degree(n)
    b, a2 = _accessors(seq, x)
    one = _one_like(x)
    values = [one]
    derivs = [0 * one]
    prev, dprev = 0 * one, 0 * one
    for k in range(n):
        cur, dcur = values[-1], derivs[-1]
        values.append((x - b(k)) * cur - a2(k) * prev)
        derivs.append(cur + (x - b(k)) * dcur - a2(k) * dprev)
        prev, dprev = cur, dcur
    _check_finite(values, x)
    return (
        EvaluationVector(n, x, tuple(values), kind="monic"),
        EvaluationVector(n, x, tuple(derivs), kind="monic_derivative"),
    )


def eval_orthonormal(seq: CoefficientSequence, n: int, x) -> EvaluationVector:
    """Orthonormal values p_k = P_k / (a_1 ... a_k), by the normalized recurrence."""
    _check_degree(n)
    if isinstance(x, Fraction):
        raise TypeError("orthonormal values involve square roots; use float evaluation")
    values = [_one_like(x)]
    prev = 0 * values[0]
    a_cur = 0.0
    for k in range(n):
        a_next = seq.a(k + 1)
        cur = values[-1]
        values.append(((x - seq.b(k)) * cur - a_cur * prev) / a_next)
        prev = cur
        a_cur = a_next
    _check_finite(values, x)
    return EvaluationVector(n, x, tuple(values), kind="orthonormal")


def eval_orthonormal_with_derivative(seq: CoefficientSequence, n: int, x):
    """Orthonormal values and derivatives in one pass."""
    _check_degree(n)
    one = _one_like(x)
    values, derivs = [one], [0 * one]
    prev, dprev = 0 * one, 0 * one
    a_cur = 0.0
    for k in range(n):
        a_next = seq.a(k + 1)
        cur, dcur = values[-1], derivs[-1]
        values.append(((x - seq.b(k)) * cur - a_cur * prev) / a_next)
        derivs.append((cur + (x - seq.b(k)) * dcur - a_cur * dprev) / a_next)
        prev, dprev = cur, dcur
        a_cur = a_next
    _check_finite(values, x)
    return (
        EvaluationVector(n, x, tuple(values), kind="orthonormal"),
        EvaluationVector(n, x, tuple(derivs), kind="orthonormal_derivative"),
    )


def eval_associated(seq: CoefficientSequence, r: int, n: int, x) -> EvaluationVector:
    """Monic associated polynomials of order r: the shifted stream evaluated at x."""
    return eval_monic(shift(seq, r), n, x)


def expand_monic(seq: CoefficientSequence, n: int) -> DensePolynomial:
    """Exact dense expansion of P_n; requires exact coefficient accessors."""
    _check_degree(n)
    if not seq.has_exact:
        raise TypeError("dense expansion needs a stream with exact rational accessors")
    prev = DensePolynomial()
    cur = DensePolynomial([1])
    for k in range(n):
        nxt = DensePolynomial([-seq.b_exact(k), 1]) * cur - seq.a2_exact(k) * prev
        prev, cur = cur, nxt
    return cur


@dataclass(frozen=True)
class NormalizationLadder:
    """Scalings gamma_n = (a_1...a_n)^(-1) between monic and orthonormal families."""

    seq: CoefficientSequence = field(repr=False)

    def gamma(self, n: int) -> float:
        acc = 1.0
        for k in range(1, n + 1):
            acc /= self.seq.a(k)
        return acc

    def gamma1(self, n: int) -> float:
        """First-associated scaling a_1 * gamma_n = (a_2...a_n)^(-1)."""
        return self.seq.a(1) * self.gamma(n)

    def gamma_sq_exact(self, n: int) -> Fraction:
        """Exact gamma_n^2 = 1 / (a2_1 ... a2_n); squares stay rational."""
        if not self.seq.has_exact:
            raise TypeError("exact ladder needs exact accessors")
        acc = Fraction(1)
        for k in range(1, n + 1):
            acc /= self.seq.a2_exact(k)
        return acc


def gamma_ladder(seq: CoefficientSequence) -> NormalizationLadder:
    return NormalizationLadder(seq)


def christoffel(seq: CoefficientSequence, n: int, x) -> float:
    """Christoffel function: reciprocal of sum_{j<=n} p_j(x)^2."""
    _check_degree(n)
    s = 0.0
    prev = 0.0 * _one_like(x)
    cur = _one_like(x)
    s = cur * cur
    a_cur = 0.0
    for k in range(n):
        a_next = seq.a(k + 1)
        nxt = ((x - seq.b(k)) * cur - a_cur * prev) / a_next
        s = s + nxt * nxt
        prev, cur, a_cur = cur, nxt, a_next
    return 1.0 / s


def mixed_sum(seq: CoefficientSequence, n: int, x) -> float:
    """Direct sum over k of p_k(x) p_{k-1}^(1)(x), k = 1..n."""
    if n < 1:
        raise ValueError("mixed sum needs n >= 1")
    p = eval_orthonormal(seq, n, x)
    q = eval_orthonormal(shift(seq, 1), n - 1, x)
    total = 0.0 * _one_like(x)
    for k in range(1, n + 1):
        total = total + p[k] * q[k - 1]
    return total


def mixed_sum_christoffel_darboux(seq: CoefficientSequence, n: int, x) -> float:
    """Same sum through the bracket a_{n+1} [p'_{n+1} p^(1)_{n-1} - p'_n p^(1)_n]."""
    if n < 1:
        raise ValueError("mixed sum needs n >= 1")
    _, dp = eval_orthonormal_with_derivative(seq, n + 1, x)
    q = eval_orthonormal(shift(seq, 1), n, x)
    return seq.a(n + 1) * (dp[n + 1] * q[n - 1] - dp[n] * q[n])


def trace_class_score(seq: CoefficientSequence, N: int) -> float:
    """Partial sum of |1 - 4 a2_{k+1}| + 2|b_k| over the first N indices.

    Finiteness of the full series places the stream in the trace-class
    regime that guarantees an absolutely continuous part on (-1, 1).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    total = 0.0
    for k in range(N):
        total += abs(1.0 - 4.0 * seq.a2(k + 1)) + 2.0 * abs(seq.b(k))
    return total
