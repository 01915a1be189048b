"""Differential equations for anti-associated families of classical bases.

Everything here runs in exact rational arithmetic end to end: the operator
coefficients come out as Fraction polynomials and residuals can be checked
exactly at rational points.  The construction is per fixed degree n (the
eigenvalue enters the coefficients), so no symbolic-n ring is needed.

Outline: the anti-associated member of degree n+r decomposes over the base
family as Q_r P_n + B P_{n-1}^(1) with B = -a2_0 Q_{r-1}.  Conjugating the
formal adjoint of the base hypergeometric operator by B and clearing
denominators produces an operator R with polynomial coefficients such that
R applied to the anti-associated member is a polynomial combination
M_0 P_n + N_0 P_n' after the base equation eliminates P_n''.  Multiplying
by sigma and differentiating twice more yields two further pairs
(M_1, N_1), (M_2, N_2); cast as a 3x3 determinant in (R y, sigma (R y)',
sigma (sigma (R y)')'), the elimination of P_n and P_n' gives a fourth
order operator annihilating exactly the degree n+r member.

When the base is the Grosjean line with parameter -1/2 (the first-kind
Chebyshev stream) the member decomposes directly as A_0 T_n + B_0 T_n'
because the first associated family is reachable through the derivative;
the same determinant with rows (y, sigma y', sigma (sigma y')') then gives
a second order operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .extension import ExtensionParams, q_ladder
from .families import ClassicalOperator, FamilyDescriptor
from .polynomials import (
    ONE,
    DensePolynomial,
    PolyOperator,
    poly_gcd,
)


class DegenerateCaseError(ValueError):
    """The requested construction degenerates for these parameters."""


def hypergeometric_operator(op: ClassicalOperator) -> PolyOperator:
    """sigma D^2 + tau D + lam(n) as a polynomial operator."""
    return PolyOperator([DensePolynomial([op.lam_n]), op.tau, op.sigma])


def adjoint(op: PolyOperator, sigma: DensePolynomial, tau: DensePolynomial) -> PolyOperator:
    """Formal adjoint of a second-order operator with the given sigma, tau.

    L* = L + 2(sigma' - tau) D + (sigma'' - tau'); an involution, and equal
    to L exactly when sigma' = tau.
    """
    if op.order != 2:
        raise ValueError("adjoint formula applies to second-order operators")
    sp = sigma.derivative()
    sdd = sp.derivative()
    tp = tau.derivative()
    c0, c1, c2 = op.coeffs
    return PolyOperator([c0 + sdd - tp, c1 + 2 * (sp - tau), c2])


def conjugated_adjoint(
    sigma: DensePolynomial,
    tau: DensePolynomial,
    n: int,
    multiplier: DensePolynomial,
) -> PolyOperator:
    """Adjoint of the degree-n hypergeometric operator conjugated by a polynomial.

    For B the multiplier, this is B^3 L* (. / B) with denominators cleared:

        sigma B^2 D^2 + [(2 sigma' - tau) B^2 - 2 sigma B B'] D
        + 2 sigma (B')^2 - sigma B B'' - B B' (2 sigma' - tau)
        - [sigma''/2 (n^2 - n - 2) + tau' (n + 1)] B^2.
    """
    B = multiplier
    if B.is_zero:
        raise ValueError("multiplier must be nonzero")
    Bp = B.derivative()
    Bpp = Bp.derivative()
    sp = sigma.derivative()
    sdd = sp.derivative()
    tp = tau.derivative()
    two_sp_minus_tau = 2 * sp - tau
    c2 = sigma * B * B
    c1 = two_sp_minus_tau * B * B - 2 * sigma * B * Bp
    c0 = (
        2 * sigma * Bp * Bp
        - sigma * B * Bpp
        - B * Bp * two_sp_minus_tau
        - (sdd * Fraction(n * n - n - 2, 2) + tp * (n + 1)) * B * B
    )
    return PolyOperator([c0, c1, c2])


def eliminate_second_derivative(
    coeff_ppp: DensePolynomial,
    coeff_pp: DensePolynomial,
    coeff_p: DensePolynomial,
    sigma: DensePolynomial,
    tau: DensePolynomial,
    lam: Fraction,
) -> tuple[DensePolynomial, DensePolynomial]:
    """Reduce A P'' + B P' + C P modulo sigma P'' = -tau P' - lam P.

    A must be an exact sigma multiple (callers multiply through by sigma
    when staging expressions); returns (M, N) with the value M P + N P'.
    """
    quotient = coeff_ppp.div_exact(sigma)
    M = coeff_p - lam * quotient
    N = coeff_pp - tau * quotient
    return M, N


def sigma_derivative_pair(
    M: DensePolynomial,
    N: DensePolynomial,
    sigma: DensePolynomial,
    tau: DensePolynomial,
    lam: Fraction,
) -> tuple[DensePolynomial, DensePolynomial]:
    """Pair for sigma (M P + N P')' with P'' eliminated by the base equation.

    M_next = sigma M' - lam N,  N_next = sigma (M + N') - tau N.
    """
    return (
        sigma * M.derivative() - lam * N,
        sigma * (M + N.derivative()) - tau * N,
    )


def _sigma_d_compose(coeffs: tuple, sigma: DensePolynomial) -> tuple:
    """Coefficients of sigma * d/dx composed after the given operator."""
    out = []
    k = len(coeffs)
    for i in range(k + 1):
        term = DensePolynomial()
        if i < k:
            term = term + coeffs[i].derivative()
        if i >= 1:
            term = term + coeffs[i - 1]
        out.append(sigma * term)
    return tuple(out)


def _normalize(coeffs: list[DensePolynomial]) -> list[DensePolynomial]:
    """Strip the common polynomial factor and make coefficients primitive."""
    nonzero = [c for c in coeffs if not c.is_zero]
    if not nonzero:
        return coeffs
    g = nonzero[0]
    for c in nonzero[1:]:
        g = poly_gcd(g, c)
        if g.degree == 0:
            break
    if g.degree > 0:
        coeffs = [c.div_exact(g) for c in coeffs]
    stacked = DensePolynomial()
    shift_amt = 0
    for c in coeffs:
        stacked = stacked + DensePolynomial([0] * shift_amt + list(c.coeffs))
        shift_amt += c.degree + 1 if not c.is_zero else 1
    content = stacked.content()
    lead = next(c for c in reversed(coeffs) if not c.is_zero)
    if lead.coeffs[-1] < 0:
        content = -content
    return [DensePolynomial([a / content for a in c.coeffs]) for c in coeffs]


@dataclass(frozen=True)
class FourthOrderODE:
    """Fourth-order annihilator: coefficient polynomials, highest order first."""

    coefficients: tuple  # (c4, c3, c2, c1, c0)

    def __post_init__(self):
        if len(self.coefficients) != 5:
            raise ValueError("expected five coefficient polynomials")
        if self.coefficients[0].is_zero:
            raise DegenerateCaseError("leading coefficient vanished; order dropped")

    @property
    def operator(self) -> PolyOperator:
        return PolyOperator(tuple(reversed(self.coefficients)))

    def apply(self, poly: DensePolynomial) -> DensePolynomial:
        return self.operator.apply(poly)

    def residual_at(self, poly: DensePolynomial, x: Fraction) -> Fraction:
        return self.apply(poly)(x)


def _determinant_operator(
    base_rows: tuple,
    pairs: list[tuple[DensePolynomial, DensePolynomial]],
    sigma: DensePolynomial,
) -> list[DensePolynomial]:
    """Expand the 3x3 elimination determinant along its operator column.

    base_rows holds the operator coefficients of the first row; the second
    and third rows are sigma*d/dx composites of it.  The 2x2 minors of the
    (M_i, N_i) columns multiply the operator entries with alternating signs.
    """
    (M0, N0), (M1, N1), (M2, N2) = pairs
    W0 = M1 * N2 - N1 * M2
    W1 = M0 * N2 - N0 * M2
    W2 = M0 * N1 - N0 * M1
    T0 = base_rows
    T1 = _sigma_d_compose(T0, sigma)
    T2 = _sigma_d_compose(T1, sigma)
    order = len(T2) - 1
    out = []
    for i in range(order + 1):
        c = DensePolynomial()
        if i < len(T0):
            c = c + W0 * T0[i]
        if i < len(T1):
            c = c - W1 * T1[i]
        c = c + W2 * T2[i]
        out.append(c)
    return out


def fourth_order_ode(
    base: FamilyDescriptor, params: ExtensionParams, n: int
) -> FourthOrderODE:
    """Fourth-order operator annihilating the degree n+r anti-associated member.

    The base must be classical with exact rational parameters.  On the
    Grosjean first-kind line sigma'' - 2 tau' vanishes and the elimination
    is homogeneous; for other classical bases the inhomogeneous term
    (sigma'' - 2 tau') B^3 P_n' enters the first reduction.  The parameter
    -1/2 (first-kind Chebyshev base) degenerates to second order.
    """
    if n < 1:
        raise ValueError("degree n must be >= 1")
    alpha = base.grosjean_alpha
    if alpha is not None and Fraction(alpha) == Fraction(-1, 2):
        raise DegenerateCaseError(
            "base is the first-kind Chebyshev stream; use second_order_ode"
        )
    op = base.classical(n)
    sigma, tau, lam = op.sigma, op.tau, op.lam_n
    exact = params.as_fractions()
    polys = q_ladder(exact).polys
    Qr = polys[exact.r]
    Qrm1 = polys[exact.r - 1]
    B = -exact.a0_sq * Qrm1
    R = conjugated_adjoint(sigma, tau, n, B)
    R0, R1, R2c = R.coeffs
    # R applied to the product Q_r P_n, expanded by the product rule.
    E_pp = R2c * Qr
    E_p = 2 * R2c * Qr.derivative() + R1 * Qr
    E_0 = R2c * Qr.derivative().derivative() + R1 * Qr.derivative() + R0 * Qr
    inhom = sigma.derivative().derivative() - 2 * tau.derivative()
    if not inhom.is_zero:
        E_p = E_p + inhom * B * B * B
    M0, N0 = eliminate_second_derivative(E_pp, E_p, E_0, sigma, tau, lam)
    M1, N1 = sigma_derivative_pair(M0, N0, sigma, tau, lam)
    M2, N2 = sigma_derivative_pair(M1, N1, sigma, tau, lam)
    coeffs = _determinant_operator(R.coeffs, [(M0, N0), (M1, N1), (M2, N2)], sigma)
    coeffs = _normalize(coeffs)
    if len(coeffs) != 5:
        raise DegenerateCaseError("construction did not produce order four")
    return FourthOrderODE(tuple(reversed(coeffs)))


def second_order_ode(params: ExtensionParams, n: int) -> PolyOperator:
    """Second-order annihilator for extensions of the first-kind Chebyshev stream.

    The degree n+r member is A_0 t_n + B_0 t_n' with A_0 = Q_r and
    B_0 = -a2_0 Q_{r-1} / n (the first associated family of the base is the
    derivative family, scaled by n).  One determinant with rows
    (y, sigma y', sigma (sigma y')') then eliminates t_n and t_n'.
    """
    if n < 1:
        raise ValueError("degree n must be >= 1")
    sigma = DensePolynomial([1, 0, -1])
    tau = DensePolynomial([0, -1])
    lam = Fraction(n * n)
    exact = params.as_fractions()
    polys = q_ladder(exact).polys
    A0 = polys[exact.r]
    B0 = -Fraction(exact.a0_sq, n) * polys[exact.r - 1]
    M1, N1 = sigma_derivative_pair(A0, B0, sigma, tau, lam)
    M2, N2 = sigma_derivative_pair(M1, N1, sigma, tau, lam)
    coeffs = _determinant_operator((ONE,), [(A0, B0), (M1, N1), (M2, N2)], sigma)
    coeffs = _normalize(coeffs)
    return PolyOperator(coeffs)
