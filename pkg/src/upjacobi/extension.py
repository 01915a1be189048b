"""Upward extension of a coefficient stream and anti-associated polynomials.

Prepending r rows/columns to a Jacobi matrix introduces 2r parameters:
diagonal entries b_{-r}..b_{-1} and couplings a2_{-r+1}..a2_{-1}, a2_0.
Parameter vectors are indexed most-negative-first, matching the matrix
layout top-left to bottom-right; a2_0 couples the new block to the old one
and is stored last.  Off-by-one mistakes here silently corrupt the closed
form, hence the explicit conventions below.

Degree n+r members of the extended family decompose over the base family:

    P_{n+r}^(-r) = Q_r P_n - a2_0 Q_{r-1} P_{n-1}^(1),

with Q_k the orthogonal polynomials of the finite prepended block.  Both
this closed form and the plain recurrence on the extended stream are
provided; their agreement is one of the package's standing checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomials import DensePolynomial
from .recurrence import (
    CoefficientSequence,
    eval_monic,
    eval_orthonormal,
    shift,
)


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


@dataclass(frozen=True)
class ExtensionParams:
    """The 2r new parameters: b_new = [b_{-r}..b_{-1}], a2_new = [a2_{-r+1}..a2_0]."""

    r: int
    b_new: tuple
    a2_new: tuple

    def __post_init__(self):
        object.__setattr__(self, "b_new", tuple(self.b_new))
        object.__setattr__(self, "a2_new", tuple(self.a2_new))
        if self.r < 1:
            raise ValueError("extension order r must be >= 1")
        if len(self.b_new) != self.r or len(self.a2_new) != self.r:
            raise ValueError("need exactly r diagonal and r coupling parameters")
        if any(float(v) <= 0 for v in self.a2_new):
            raise ValueError("all coupling parameters a2 must be positive")

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for v in self.b_new) and all(
            _is_exact(v) for v in self.a2_new
        )

    @property
    def a0_sq(self):
        return self.a2_new[-1]

    @property
    def a0(self) -> float:
        return math.sqrt(float(self.a0_sq))

    def as_fractions(self) -> "ExtensionParams":
        if self.exact:
            return ExtensionParams(
                self.r,
                tuple(Fraction(v) for v in self.b_new),
                tuple(Fraction(v) for v in self.a2_new),
            )
        raise TypeError("parameters contain floats; exact arithmetic unavailable")


def truncate_params(params: ExtensionParams, k: int) -> ExtensionParams:
    """Drop the first k prepended rows, leaving an order r-k extension."""
    if not 0 < k < params.r:
        raise ValueError("k must satisfy 0 < k < r")
    return ExtensionParams(params.r - k, params.b_new[k:], params.a2_new[k:])


def extend(seq: CoefficientSequence, params: ExtensionParams) -> CoefficientSequence:
    """Prepend r rows/columns: indices 0..r-1 are new, index r+n maps to n."""
    r = params.r
    b_new = tuple(float(v) for v in params.b_new)
    a2_new = tuple(float(v) for v in params.a2_new)

    def b(n: int) -> float:
        return b_new[n] if n < r else seq.b(n - r)

    def a2(n: int) -> float:
        return a2_new[n - 1] if 1 <= n <= r else seq.a2(n - r)

    if params.exact and seq.has_exact:
        bx = tuple(Fraction(v) for v in params.b_new)
        a2x = tuple(Fraction(v) for v in params.a2_new)

        def b_exact(n: int) -> Fraction:
            return bx[n] if n < r else seq.b_exact(n - r)

        def a2_exact(n: int) -> Fraction:
            return a2x[n - 1] if 1 <= n <= r else seq.a2_exact(n - r)
    else:
        b_exact = a2_exact = None

    return CoefficientSequence(
        b, a2, b_exact, a2_exact, name=f"{seq.name or 'seq'}^(-{r})"
    )


@dataclass(frozen=True)
class QLadder:
    """Exact prepended-block polynomials Q_0..Q_r and orthonormal scalings.

    scale[k] = a_{-r+1} ... a_{-r+k}, so q_k(x) = Q_k(x) / scale[k].
    Consecutive Q's never share a zero (they are consecutive orthogonal
    polynomials of the finite block).
    """

    polys: tuple
    scale: tuple

    @property
    def r(self) -> int:
        return len(self.polys) - 1

    def q(self, k: int, x):
        return self.polys[k](x) / self.scale[k]


def q_ladder(params: ExtensionParams) -> QLadder:
    """Build Q_0..Q_r exactly from the prepended-block recurrence.

    Q_{n+1}(x) = (x - b_{-r+n}) Q_n(x) - a2_{-r+n} Q_{n-1}(x) for n < r;
    only the r-1 interior couplings enter, a2_0 never does.
    """
    exact = params.as_fractions()
    prev = DensePolynomial()
    cur = DensePolynomial([1])
    polys = [cur]
    for n in range(exact.r):
        poly_next = DensePolynomial([-exact.b_new[n], 1]) * cur
        if n >= 1:
            poly_next = poly_next - exact.a2_new[n - 1] * prev
        prev, cur = cur, poly_next
        polys.append(cur)
    scale = [1.0]
    for k in range(1, exact.r + 1):
        scale.append(scale[-1] * math.sqrt(float(params.a2_new[k - 1])))
    return QLadder(tuple(polys), tuple(scale))


def q_values(params: ExtensionParams, x) -> list:
    """Numeric Q_0(x)..Q_r(x) straight from the block recurrence.

    Works for float, Fraction (exact parameters only) and numpy input.
    """
    exact_mode = isinstance(x, Fraction)
    if exact_mode:
        p = params.as_fractions()
        b_new, a2_new = p.b_new, p.a2_new
        one = Fraction(1)
    else:
        b_new = tuple(float(v) for v in params.b_new)
        a2_new = tuple(float(v) for v in params.a2_new)
        one = 1.0
    values = [one + 0 * x]
    prev = 0 * x
    for n in range(params.r):
        cur = values[-1]
        nxt = (x - b_new[n]) * cur
        if n >= 1:
            nxt = nxt - a2_new[n - 1] * prev
        values.append(nxt)
        prev = cur
    return values


def eval_anti_direct(seq: CoefficientSequence, params: ExtensionParams, m: int, x):
    """P_m^(-r)(x) by running the recurrence on the extended stream."""
    return eval_monic(extend(seq, params), m, x).last


def eval_anti_closed(seq: CoefficientSequence, params: ExtensionParams, n: int, x):
    """P_{n+r}^(-r)(x) through the base-family decomposition.

    Uses Q_r P_n - a2_0 Q_{r-1} P_{n-1}^(1); at n = 0 the associated term
    drops out and the value is Q_r(x).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    q = q_values(params, x)
    a0_sq = params.a0_sq if isinstance(x, Fraction) else float(params.a0_sq)
    if n == 0:
        return q[params.r]
    p_n = eval_monic(seq, n, x).last
    p1 = eval_monic(shift(seq, 1), n - 1, x).last
    return q[params.r] * p_n - a0_sq * q[params.r - 1] * p1


def eval_anti_orthonormal(seq: CoefficientSequence, params: ExtensionParams, n: int, x):
    """Orthonormal p_{n+r}^(-r)(x) = q_r p_n - (a_0/a_1) q_{r-1} p_{n-1}^(1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = q_values(params, x)
    scale = [1.0]
    for k in range(1, params.r + 1):
        scale.append(scale[-1] * math.sqrt(float(params.a2_new[k - 1])))
    q_r = q[params.r] / scale[params.r]
    if n == 0:
        return q_r
    q_rm1 = q[params.r - 1] / scale[params.r - 1]
    p_n = eval_orthonormal(seq, n, x).last
    p1 = eval_orthonormal(shift(seq, 1), n - 1, x).last
    return q_r * p_n - (params.a0 / seq.a(1)) * q_rm1 * p1


def shift_identity_check(
    seq: CoefficientSequence,
    params: ExtensionParams,
    k: int,
    n: int,
    x,
    tol: float = 1e-12,
) -> bool:
    """Check that shifting the extension by k reproduces the order r-k extension.

    k = r recovers the base stream itself; k = 0 is the identity.
    """
    if not 0 <= k <= params.r:
        raise ValueError("need 0 <= k <= r")
    left = eval_monic(shift(extend(seq, params), k), n, x)
    if k == 0:
        right = eval_monic(extend(seq, params), n, x)
    elif k == params.r:
        right = eval_monic(seq, n, x)
    else:
        right = eval_monic(extend(seq, truncate_params(params, k)), n, x)
    if isinstance(x, Fraction):
        return list(left.values) == list(right.values)
    scale = max(1.0, max(abs(float(v)) for v in right.values))
    return all(
        abs(float(a) - float(b)) <= tol * scale
        for a, b in zip(left.values, right.values)
    )
