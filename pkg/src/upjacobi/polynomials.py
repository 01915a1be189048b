"""Exact rational polynomials and polynomial-coefficient differential operators.

Coefficients are `fractions.Fraction` throughout; nothing in this module
ever rounds.  Floating evaluation happens only on request, at the end.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class ExactDivisionError(ArithmeticError):
    """A polynomial division that was required to be exact left a remainder."""


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


class DensePolynomial:
    """Dense polynomial with exact rational coefficients, ascending order.

    Canonical form: no trailing zero coefficients; the zero polynomial has
    an empty coefficient tuple and degree -1 (sentinel).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("DensePolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, DensePolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == DensePolynomial([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "DensePolynomial":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DensePolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "DensePolynomial":
        return DensePolynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "DensePolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "DensePolynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "DensePolynomial":
        if isinstance(other, (int, Fraction)):
            return DensePolynomial([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return DensePolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DensePolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for Fraction input, float otherwise."""
        if not self.coeffs:
            return Fraction(0) if isinstance(x, Fraction) else 0.0 * x
        if isinstance(x, Fraction):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0 * x + float(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> "DensePolynomial":
        return DensePolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other) -> tuple["DensePolynomial", "DensePolynomial"]:
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            factor = rem[i] / lead
            q[i - d] = factor
            if factor:
                for j, c in enumerate(other.coeffs):
                    rem[i - d + j] -= factor * c
        return DensePolynomial(q), DensePolynomial(rem)

    def div_exact(self, other) -> "DensePolynomial":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ExactDivisionError(f"{self} is not divisible by {other}")
        return q

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if self.is_zero:
            return Fraction(1)
        from math import gcd, lcm

        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "DensePolynomial":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return DensePolynomial([a / c for a in self.coeffs])

    def monic(self) -> "DensePolynomial":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return DensePolynomial([c / lead for c in self.coeffs])

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_poly(value) -> DensePolynomial:
    if isinstance(value, DensePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return DensePolynomial([value])
    raise TypeError(f"cannot interpret {type(value).__name__} as a polynomial")


X = DensePolynomial([0, 1])
ONE = DensePolynomial([1])
ZERO = DensePolynomial()


def poly_gcd(a: DensePolynomial, b: DensePolynomial) -> DensePolynomial:
    """Monic greatest common divisor over the rationals (Euclid)."""
    a, b = _as_poly(a), _as_poly(b)
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


def resultant(a: DensePolynomial, b: DensePolynomial) -> Fraction:
    """Resultant via exact fraction-based elimination on the Sylvester matrix."""
    a, b = _as_poly(a), _as_poly(b)
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    size = m + n
    rows = []
    ra = list(reversed(a.coeffs))
    rb = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + ra + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + rb + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det


class PolyOperator:
    """Linear differential operator with polynomial coefficients.

    ``coeffs[i]`` multiplies the i-th derivative, so ``coeffs`` reads
    [c_0, c_1, ..., c_k] for c_k D^k + ... + c_1 D + c_0, with c_k nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_as_poly(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyOperator is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, p: DensePolynomial) -> DensePolynomial:
        out = ZERO
        d = _as_poly(p)
        for c in self.coeffs:
            out = out + c * d
            d = d.derivative()
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyOperator):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            term = f"({c})"
            if i == 1:
                term += "*D"
            elif i > 1:
                term += f"*D^{i}"
            parts.append(term)
        return " + ".join(parts)


def proportional(a: PolyOperator, b: PolyOperator) -> bool:
    """True when the operators agree up to one global polynomial factor."""
    if a.order != b.order:
        return False
    for ca, cb in zip(a.coeffs, b.coeffs):
        if ca.is_zero != cb.is_zero:
            return False
    ref = None
    for ca, cb in zip(a.coeffs, b.coeffs):
        if ca.is_zero:
            continue
        if ref is None:
            ref = (ca, cb)
            continue
        if not (ca * ref[1] == cb * ref[0]):
            return False
    return True
