"""Named coefficient streams: Chebyshev (four kinds), Grosjean, general Jacobi.

The Grosjean families are the monic Jacobi subfamilies with parameter sums
-1 (first kind, -1 < alpha < 0) and +1 (second kind, -1 < alpha < 2).  They
are closed under the association shift, which is what makes the measure
construction for upward extensions tractable.

Weights are exposed as probability densities.  Note one normalization fix:
the classical display for the second-kind weight carries total mass 2; the
constant used here includes the extra 1/2 so that the density integrates
to one, which is also what the Christoffel-limit identities require.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .polynomials import DensePolynomial
from .recurrence import CoefficientSequence, from_exact

_HALF = Fraction(1, 2)


def _rationalize(value) -> Optional[Fraction]:
    """Fraction for int/Fraction/str inputs, None for genuine floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    return None


@dataclass(frozen=True)
class GrosjeanParam:
    """Validated Grosjean family parameter."""

    alpha: object
    kind: str  # "first" | "second"

    def __post_init__(self):
        a = float(self.alpha)
        if self.kind == "first":
            if not -1.0 < a < 0.0:
                raise ValueError(f"first-kind Grosjean needs -1 < alpha < 0, got {a}")
        elif self.kind == "second":
            if not -1.0 < a < 2.0:
                raise ValueError(f"second-kind Grosjean needs -1 < alpha < 2, got {a}")
        else:
            raise ValueError(f"unknown Grosjean kind {self.kind!r}")


def jacobi_coeffs(alpha, beta) -> CoefficientSequence:
    """Monic Jacobi recurrence coefficients for weight (1-x)^a (1+x)^b on [-1, 1].

    The n = 0 and n = 1 entries use dedicated formulas; the generic ones have
    removable 0/0 factors exactly at the Grosjean parameter lines.
    """
    if not (float(alpha) > -1 and float(beta) > -1):
        raise ValueError("Jacobi parameters must satisfy alpha > -1 and beta > -1")
    ra, rb = _rationalize(alpha), _rationalize(beta)

    if ra is not None and rb is not None:
        def b_exact(n: int) -> Fraction:
            if n == 0:
                return (rb - ra) / (ra + rb + 2)
            s = 2 * n + ra + rb
            return (rb * rb - ra * ra) / (s * (s + 2))

        def a2_exact(n: int) -> Fraction:
            if n == 1:
                return 4 * (1 + ra) * (1 + rb) / ((2 + ra + rb) ** 2 * (3 + ra + rb))
            s = 2 * n + ra + rb
            return 4 * n * (n + ra) * (n + rb) * (n + ra + rb) / (s * s * (s * s - 1))

        return from_exact(b_exact, a2_exact, name=f"jacobi({ra},{rb})")

    fa, fb = float(alpha), float(beta)

    def b(n: int) -> float:
        if n == 0:
            return (fb - fa) / (fa + fb + 2.0)
        s = 2.0 * n + fa + fb
        return (fb * fb - fa * fa) / (s * (s + 2.0))

    def a2(n: int) -> float:
        if n == 1:
            return 4.0 * (1 + fa) * (1 + fb) / ((2 + fa + fb) ** 2 * (3 + fa + fb))
        s = 2.0 * n + fa + fb
        return 4.0 * n * (n + fa) * (n + fb) * (n + fa + fb) / (s * s * (s * s - 1.0))

    return CoefficientSequence(b, a2, name=f"jacobi({fa},{fb})")


def grosjean1_coeffs(alpha) -> CoefficientSequence:
    """First-kind Grosjean stream (parameter sum -1), -1 < alpha < 0.

    b_n = (2a+1)/(4n^2-1) for n >= 0 and a2_n = (n+a)(n-1-a)/(2n-1)^2 for
    n >= 2.  The printed closed form breaks at n = 1 (it would contradict
    the general Jacobi value), so a2_1 = -2a(1+a) is taken from the latter.
    """
    GrosjeanParam(alpha, "first")
    ra = _rationalize(alpha)
    if ra is not None:
        def b_exact(n: int) -> Fraction:
            return (2 * ra + 1) / Fraction(4 * n * n - 1)

        def a2_exact(n: int) -> Fraction:
            if n == 1:
                return -2 * ra * (1 + ra)
            return (n + ra) * (n - 1 - ra) / Fraction((2 * n - 1) ** 2)

        return from_exact(b_exact, a2_exact, name=f"grosjean1({ra})")

    fa = float(alpha)

    def b(n: int) -> float:
        return (2.0 * fa + 1.0) / (4.0 * n * n - 1.0)

    def a2(n: int) -> float:
        if n == 1:
            return -2.0 * fa * (1.0 + fa)
        return (n + fa) * (n - 1.0 - fa) / (2.0 * n - 1.0) ** 2

    return CoefficientSequence(b, a2, name=f"grosjean1({fa})")


def grosjean2_coeffs(alpha) -> CoefficientSequence:
    """Second-kind Grosjean stream (parameter sum +1), -1 < alpha < 2."""
    GrosjeanParam(alpha, "second")
    ra = _rationalize(alpha)
    if ra is not None:
        def b_exact(n: int) -> Fraction:
            return (-2 * ra + 1) / Fraction(4 * (n + 1) ** 2 - 1)

        def a2_exact(n: int) -> Fraction:
            return (n + ra) * (n + 1 - ra) / Fraction((2 * n + 1) ** 2)

        return from_exact(b_exact, a2_exact, name=f"grosjean2({ra})")

    fa = float(alpha)

    def b(n: int) -> float:
        return (-2.0 * fa + 1.0) / (4.0 * (n + 1.0) ** 2 - 1.0)

    def a2(n: int) -> float:
        return (n + fa) * (n + 1.0 - fa) / (2.0 * n + 1.0) ** 2

    return CoefficientSequence(b, a2, name=f"grosjean2({fa})")


_CHEBYSHEV = {
    "T": ([Fraction(0)], [_HALF], Fraction(0), Fraction(1, 4)),
    "U": ([Fraction(0)], [Fraction(1, 4)], Fraction(0), Fraction(1, 4)),
    "V": ([-_HALF], [Fraction(1, 4)], Fraction(0), Fraction(1, 4)),
    "W": ([_HALF], [Fraction(1, 4)], Fraction(0), Fraction(1, 4)),
}


def chebyshev_coeffs(kind: str) -> CoefficientSequence:
    """Monic Chebyshev streams of the first/second/third/fourth kind."""
    key = kind.strip().upper()
    if key not in _CHEBYSHEV:
        raise ValueError(f"unknown Chebyshev kind {kind!r}; expected T, U, V or W")
    bs, a2s, b_tail, a2_tail = _CHEBYSHEV[key]

    def b_exact(n: int) -> Fraction:
        return bs[n] if n < len(bs) else b_tail

    def a2_exact(n: int) -> Fraction:
        return a2s[n - 1] if 1 <= n <= len(a2s) else a2_tail

    return from_exact(b_exact, a2_exact, name=f"chebyshev_{key}")


def _check_interior(x) -> None:
    if np.any(np.abs(x) >= 1):
        raise ValueError("weight is defined on the open interval (-1, 1)")


def grosjean1_weight(alpha, x):
    """First-kind Grosjean probability density on (-1, 1)."""
    GrosjeanParam(alpha, "first")
    _check_interior(x)
    a = float(alpha)
    return (
        math.sin(-math.pi * a)
        / math.pi
        * ((1.0 - x) / (1.0 + x)) ** a
        / (1.0 + x)
    )


def grosjean2_weight(alpha, x):
    """Second-kind Grosjean probability density on (-1, 1).

    Carries the factor 1/2 relative to the classical display so the total
    mass is one (at alpha = 1/2 this is the familiar (2/pi) sqrt(1-x^2)).
    """
    GrosjeanParam(alpha, "second")
    _check_interior(x)
    a = float(alpha)
    return (
        math.sin(math.pi * a)
        / (2.0 * a * (1.0 - a) * math.pi)
        * ((1.0 - x) / (1.0 + x)) ** a
        * (1.0 + x)
    )


@dataclass(frozen=True)
class ClassicalOperator:
    """Second-order hypergeometric data (sigma, tau, eigenvalue) for one degree.

    The eigenvalue map is lam(n) = -n[(n-1) sigma'' + 2 tau']/2, so the
    operator sigma D^2 + tau D + lam(n) annihilates the degree-n member.
    """

    sigma: DensePolynomial
    tau: DensePolynomial
    lam: Callable[[int], Fraction]
    n: int

    @property
    def lam_n(self) -> Fraction:
        return self.lam(self.n)


def classical_operator(family: str, alpha, n: int) -> ClassicalOperator:
    """Exact sigma/tau/eigenvalue for the named Grosjean family."""
    ra = _rationalize(alpha)
    if ra is None:
        raise TypeError("classical operator data needs a rational alpha")
    sigma = DensePolynomial([1, 0, -1])
    if family == "grosjean1":
        GrosjeanParam(ra, "first")
        tau = DensePolynomial([-1 - 2 * ra, -1])
        lam = lambda m: Fraction(m * m)
    elif family == "grosjean2":
        GrosjeanParam(ra, "second")
        tau = DensePolynomial([1 - 2 * ra, -3])
        lam = lambda m: Fraction(m * (m + 2))
    else:
        raise ValueError(f"unknown classical family {family!r}")
    return ClassicalOperator(sigma, tau, lam, n)


def jacobi_classical_operator(alpha, beta, n: int) -> ClassicalOperator:
    """Exact sigma/tau/eigenvalue for general monic Jacobi parameters."""
    ra, rb = _rationalize(alpha), _rationalize(beta)
    if ra is None or rb is None:
        raise TypeError("classical operator data needs rational parameters")
    sigma = DensePolynomial([1, 0, -1])
    tau = DensePolynomial([rb - ra, -(ra + rb + 2)])
    lam = lambda m: Fraction(m) * (m + ra + rb + 1)
    return ClassicalOperator(sigma, tau, lam, n)


def darboux_asymptotic(alpha, beta, n: int, theta: float) -> float:
    """Leading interior asymptotic term of sqrt(n pi) P_n^(a,b)(cos theta).

    Valid for 0 < theta < pi; the omitted remainder is O(1/n) uniformly on
    closed subintervals.
    """
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie strictly between 0 and pi")
    a, b = float(alpha), float(beta)
    half = 0.5 * theta
    phase = (n + 0.5 * (a + b + 1.0)) * theta - 0.5 * (a + 0.5) * math.pi
    return (
        math.sin(half) ** (-a - 0.5)
        * math.cos(half) ** (-b - 0.5)
        * math.cos(phase)
    )


@dataclass(frozen=True)
class FamilyDescriptor:
    """Tagged base-family description, parseable from CLI configs."""

    kind: str
    alpha: object = None
    beta: object = None

    _KINDS = (
        "grosjean1",
        "grosjean2",
        "jacobi",
        "chebyshev_t",
        "chebyshev_u",
        "chebyshev_v",
        "chebyshev_w",
    )

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind in ("grosjean1", "grosjean2"):
            if self.alpha is None:
                raise ValueError(f"{self.kind} needs an alpha parameter")
            GrosjeanParam(self.alpha, "first" if self.kind == "grosjean1" else "second")
        if self.kind == "jacobi" and (self.alpha is None or self.beta is None):
            raise ValueError("jacobi needs alpha and beta")

    def sequence(self) -> CoefficientSequence:
        if self.kind == "grosjean1":
            return grosjean1_coeffs(self.alpha)
        if self.kind == "grosjean2":
            return grosjean2_coeffs(self.alpha)
        if self.kind == "jacobi":
            return jacobi_coeffs(self.alpha, self.beta)
        return chebyshev_coeffs(self.kind.rsplit("_", 1)[1])

    def weight(self, x):
        """Probability density of the base measure, where implemented."""
        if self.kind == "grosjean1":
            return grosjean1_weight(self.alpha, x)
        if self.kind == "grosjean2":
            return grosjean2_weight(self.alpha, x)
        if self.kind == "chebyshev_t":
            return grosjean1_weight(_HALF * -1, x)
        if self.kind == "chebyshev_u":
            return grosjean2_weight(_HALF, x)
        raise NotImplementedError(f"no weight formula wired for {self.kind}")

    def classical(self, n: int) -> ClassicalOperator:
        if self.kind == "grosjean1":
            return classical_operator("grosjean1", self.alpha, n)
        if self.kind == "grosjean2":
            return classical_operator("grosjean2", self.alpha, n)
        if self.kind == "chebyshev_t":
            return classical_operator("grosjean1", -_HALF, n)
        if self.kind == "chebyshev_u":
            return classical_operator("grosjean2", _HALF, n)
        if self.kind == "jacobi":
            return jacobi_classical_operator(self.alpha, self.beta, n)
        raise NotImplementedError(f"no classical operator for {self.kind}")

    @property
    def grosjean_alpha(self):
        """Alpha of the equivalent first-kind Grosjean stream, if any."""
        if self.kind == "grosjean1":
            return self.alpha
        if self.kind == "chebyshev_t":
            return -_HALF
        return None
