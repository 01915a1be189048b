"""Orthogonality measures of anti-associated families: density plus mass points.

For a first-kind Grosjean base the extended family's measure has an
absolutely continuous part on (-1, 1) whose density is the base weight
divided by a positive factor built from the prepended-block polynomials,
plus at most r mass points on each side of the interval.  For a constant
(second-kind Chebyshev) base the density is a Bernstein-Szego weight.

The complex modulus in the Grosjean density is expanded once into real
arithmetic: with g(x) = (1-x)^a (1+x)^(-a-1),

    |q_r - a_0 e^{i a pi} q_{r-1} g|^2
        = q_r^2 - 2 a_0 cos(a pi) q_r q_{r-1} g + a_0^2 q_{r-1}^2 g^2,

pinned by the a = -1/2 specialization test against the explicit
Bernstein-Szego form.  Mass-point candidates are sign-change roots of the
boundary-ratio equation; a candidate is accepted only when it matches an
outlier eigenvalue of a large truncation of the extended matrix, and any
mismatch in either direction is reported as an error rather than guessed
away.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .extension import ExtensionParams, extend, eval_orthonormal, q_values
from .families import FamilyDescriptor
from .recurrence import CoefficientSequence, christoffel, eval_orthonormal as _eval_on, shift
from .spectral import extreme_eigenvalues, gershgorin_interval, truncate

EDGE_STANDOFF = 1e-8


class QuadratureError(ArithmeticError):
    """Panel refinement stopped improving before reaching the target."""


class MassPointError(ValueError):
    """Mass-point bookkeeping failed an integrity check."""


@dataclass(frozen=True)
class MeasureModel:
    """Reconstructed measure: continuous density on (-1,1) plus point masses."""

    density: Callable
    masses: tuple
    kind: str  # "grosjean" | "bernstein_szego_u" | "bernstein_szego_t"

    @property
    def mass_total(self) -> float:
        return float(sum(m for _, m in self.masses))


def _scaled_q(params: ExtensionParams, x):
    """Orthonormal-scale block values q_{r-1}(x), q_r(x)."""
    q = q_values(params, x)
    scale = 1.0
    for v in params.a2_new[:-1]:
        scale *= math.sqrt(float(v))
    q_rm1 = q[params.r - 1] / scale
    q_r = q[params.r] / (scale * params.a0)
    return q_rm1, q_r


def grosjean_extension_density(alpha, params: ExtensionParams, x):
    """Density on (-1,1) for an order-r extension of the first-kind Grosjean base."""
    a = float(alpha)
    if not -1.0 < a < 0.0:
        raise ValueError("need -1 < alpha < 0")
    if np.any(np.abs(x) >= 1):
        raise ValueError("density is defined on the open interval (-1, 1)")
    g = (1.0 - x) ** a * (1.0 + x) ** (-a - 1.0)
    q_rm1, q_r = _scaled_q(params, x)
    a0 = params.a0
    denom = q_r * q_r - 2.0 * a0 * math.cos(a * math.pi) * q_r * q_rm1 * g + (
        a0 * q_rm1 * g
    ) ** 2
    return math.sin(-math.pi * a) / math.pi * g / denom


def bernstein_szego_u_density(params: ExtensionParams, x):
    """Density for extensions of the constant (second-kind Chebyshev) stream."""
    if np.any(np.abs(x) >= 1):
        raise ValueError("density is defined on the open interval (-1, 1)")
    q_rm1, q_r = _scaled_q(params, x)
    a0 = params.a0
    denom = q_r * q_r - 4.0 * a0 * x * q_r * q_rm1 + 4.0 * a0 * a0 * q_rm1 * q_rm1
    return 2.0 / math.pi * np.sqrt(1.0 - x * x) / denom


def bernstein_szego_t_density(params: ExtensionParams, x):
    """Density for extensions of the first-kind Chebyshev stream."""
    if np.any(np.abs(x) >= 1):
        raise ValueError("density is defined on the open interval (-1, 1)")
    q_rm1, q_r = _scaled_q(params, x)
    a0_sq = float(params.a0_sq)
    denom = (1.0 - x * x) * q_r * q_r + a0_sq * q_rm1 * q_rm1
    return np.sqrt(1.0 - x * x) / (math.pi * denom)


def _grosjean_boundary_ratio(alpha: float, x):
    """Limit of p_{n-1}^(1) / (a_1 p_n) off the interval; signed like x."""
    return np.sign(x) * np.abs(x - 1.0) ** alpha * np.abs(x + 1.0) ** (-alpha - 1.0)


def _u_boundary_ratio(x):
    """Limit of U_{n-1}/U_n off the interval: sign(x) (|x| - sqrt(x^2-1))."""
    ax = np.abs(x)
    return np.sign(x) * (ax - np.sqrt(ax * ax - 1.0))


def stieltjes_ratio_limit(alpha, x) -> float:
    """Closed-form limit of p_{n-1}^(1)(x) / (a_1 p_n(x)) for |x| > 1.

    Positive branch to the right of the interval, negative to the left.
    """
    if np.any(np.abs(x) <= 1):
        raise ValueError("the ratio limit lives outside [-1, 1]")
    return _grosjean_boundary_ratio(float(alpha), x)


def stieltjes_ratio_estimate(seq: CoefficientSequence, x: float, n: int) -> float:
    """Finite-n ratio p_{n-1}^(1)(x) / (a_1 p_n(x)), jointly rescaled.

    Both families grow exponentially off the interval; a shared rescale each
    step keeps the pair representable while leaving the ratio untouched.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sh = shift(seq, 1)
    p_prev, p_cur = 0.0, 1.0
    u_prev, u_cur = 0.0, 1.0
    a_p, a_u = 0.0, 0.0
    for k in range(n):
        a_p_next = seq.a(k + 1)
        p_next = ((x - seq.b(k)) * p_cur - a_p * p_prev) / a_p_next
        if k < n - 1:
            a_u_next = sh.a(k + 1)
            u_next = ((x - sh.b(k)) * u_cur - a_u * u_prev) / a_u_next
        else:
            u_next = u_cur
            u_cur = u_prev
            a_u_next = a_u
        p_prev, p_cur, a_p = p_cur, p_next, a_p_next
        if k < n - 1:
            u_prev, u_cur, a_u = u_cur, u_next, a_u_next
        else:
            u_prev, u_cur = u_cur, u_next
        scale = max(abs(p_cur), abs(u_cur), 1e-300)
        if scale > 1e100:
            p_prev /= scale
            p_cur /= scale
            u_prev /= scale
            u_cur /= scale
    return u_cur / (seq.a(1) * p_cur)


def mass_point_equation(base: FamilyDescriptor, params: ExtensionParams, x):
    """Scalar function whose off-interval roots are the mass-point candidates."""
    if np.any(np.abs(x) <= 1):
        raise ValueError("mass points live strictly outside [-1, 1]")
    q_rm1, q_r = _scaled_q(params, x)
    a0 = params.a0
    alpha = base.grosjean_alpha
    if alpha is not None:
        return q_r - a0 * q_rm1 * _grosjean_boundary_ratio(float(alpha), x)
    if base.kind == "chebyshev_u":
        return q_r - 2.0 * a0 * q_rm1 * _u_boundary_ratio(x)
    raise NotImplementedError(f"no mass-point equation for base {base.kind}")


def _default_bound(base: FamilyDescriptor, params: ExtensionParams) -> float:
    tri = truncate(extend(base.sequence(), params), max(50, 2 * params.r + 10))
    lo, hi = gershgorin_interval(tri)
    return max(abs(lo), abs(hi)) + 1.0


def _bisect(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) != (fmid < 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _scan_roots(f, points: np.ndarray) -> list[float]:
    vals = f(points)
    roots = []
    for i in range(len(points) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if not (np.isfinite(v0) and np.isfinite(v1)):
            continue
        if v0 == 0.0:
            roots.append(float(points[i]))
        elif (v0 < 0) != (v1 < 0):
            roots.append(_bisect(f, float(points[i]), float(points[i + 1])))
    return roots


def outlier_eigenvalues(
    base: FamilyDescriptor,
    params: ExtensionParams,
    truncation: int = 2000,
    threshold: float = 1e-7,
) -> list[float]:
    """Truncation eigenvalues lying outside [-1, 1] by more than threshold."""
    tri = truncate(extend(base.sequence(), params), truncation)
    low, high = extreme_eigenvalues(tri, params.r, params.r)
    outs = [float(v) for v in low if v < -1.0 - threshold]
    outs += [float(v) for v in high if v > 1.0 + threshold]
    return sorted(outs)


def find_mass_points(
    base: FamilyDescriptor,
    params: ExtensionParams,
    search_bound: float | None = None,
    *,
    truncation: int = 2000,
    match_tol: float = 1e-6,
    grid: int = 800,
) -> list[float]:
    """All mass-point locations, cross-validated against truncation outliers.

    Sign-change roots of the boundary equation are refined by bisection to
    1e-12.  The boundary equation can diverge at the interval edge, so the
    scan starts a small standoff outside; log spacing near the edge keeps
    clustered roots resolvable.  Root multiplicity beyond r per side, or any
    root/outlier mismatch, raises instead of returning a guess.
    """
    bound = search_bound if search_bound is not None else _default_bound(base, params)
    if bound <= 1.0 + EDGE_STANDOFF:
        raise ValueError("search bound must exceed 1")
    f = lambda x: mass_point_equation(base, params, x)
    offsets = np.geomspace(EDGE_STANDOFF, bound - 1.0, grid)
    right = 1.0 + offsets
    left = -right[::-1]
    roots = sorted(_scan_roots(f, left) + _scan_roots(f, right))
    n_left = sum(1 for v in roots if v < 0)
    n_right = len(roots) - n_left
    if n_left > params.r or n_right > params.r:
        raise MassPointError(
            f"found {n_left}+{n_right} boundary-equation roots for an order "
            f"{params.r} extension; at most r per side can carry mass"
        )
    outs = outlier_eigenvalues(base, params, truncation=truncation)
    unmatched_roots = [
        v for v in roots if not any(abs(v - o) <= match_tol for o in outs)
    ]
    unmatched_outs = [
        o for o in outs if not any(abs(v - o) <= match_tol for v in roots)
    ]
    if unmatched_roots or unmatched_outs:
        raise MassPointError(
            "mass-point candidates and truncation outliers disagree: "
            f"roots without outliers {unmatched_roots}, "
            f"outliers without roots {unmatched_outs}"
        )
    return roots


def mass_at(
    base: FamilyDescriptor,
    params: ExtensionParams,
    location: float,
    rel_tol: float = 1e-8,
    max_terms: int = 200_000,
) -> float:
    """Mass carried at a verified location: 1 / sum_k p_k^(-r)(x)^2.

    Past a short transient the terms decay geometrically at a genuine mass
    point; summation stops once the geometric tail estimate drops below the
    relative target, well before forward recursion can excite the growing
    solution.  A sum that blows up instead means the location carries no
    mass, which is an error.
    """
    ext = extend(base.sequence(), params)
    x = float(location)
    warmup = 2 * params.r + 4
    cur, prev = 1.0, 0.0
    a_cur = 0.0
    total = 1.0
    term_prev = 1.0
    for k in range(1, max_terms):
        a_next = ext.a(k)
        nxt = ((x - ext.b(k - 1)) * cur - a_cur * prev) / a_next
        prev, cur, a_cur = cur, nxt, a_next
        term = cur * cur
        total += term
        if total > 1e40:
            raise MassPointError(f"values at {x} do not decay; not a mass point")
        if k >= warmup and term_prev > 0.0:
            ratio = term / term_prev
            if ratio < 1.0:
                tail = term * ratio / (1.0 - ratio)
                if tail < 0.1 * rel_tol * total:
                    total += tail
                    return 1.0 / total
        term_prev = term
    raise MassPointError(f"no convergence of the mass sum at {x}")


def build_measure(
    base: FamilyDescriptor,
    params: ExtensionParams,
    *,
    truncation: int = 2000,
) -> MeasureModel:
    """Assemble density and verified mass points for the extension's measure."""
    if base.kind == "chebyshev_u":
        density = lambda x: bernstein_szego_u_density(params, x)
        kind = "bernstein_szego_u"
    elif base.kind == "chebyshev_t":
        density = lambda x: bernstein_szego_t_density(params, x)
        kind = "bernstein_szego_t"
    elif base.kind == "grosjean1":
        alpha = base.alpha
        density = lambda x: grosjean_extension_density(alpha, params, x)
        kind = "grosjean"
    else:
        raise NotImplementedError(f"measure reconstruction for base {base.kind}")
    locations = find_mass_points(base, params, truncation=truncation)
    masses = tuple((loc, mass_at(base, params, loc)) for loc in locations)
    return MeasureModel(density=density, masses=masses, kind=kind)


def _theta_rule(panels: int, nodes: int, edge_levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre points/weights on (0, pi) in the theta variable.

    Uniform interior panels with geometric subdivision of the first and last
    panel: endpoint factors behave like theta^(1+2a) and (pi-theta)^(-1-2a)
    with -1 < a < 0, so graded panels are what makes the tail contributions
    resolve; uniform refinement alone stalls for a away from -1/2.
    """
    edges = np.linspace(0.0, math.pi, panels + 1)
    parts = [edges[1] * (2.0 ** -np.arange(edge_levels, -1, -1.0))]
    parts.append(edges[2:-2])
    last = math.pi - edges[1] * (2.0 ** -np.arange(0.0, edge_levels + 1))
    parts.append(last)
    grid = np.concatenate(([0.0], *parts, [math.pi]))
    grid = np.unique(grid)
    gx, gw = np.polynomial.legendre.leggauss(nodes)
    lo = grid[:-1]
    hi = grid[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    wts = (half[:, None] * gw[None, :]).ravel()
    return pts, wts


def integrate_against(
    f: Callable,
    *,
    panels: int = 64,
    nodes: int = 32,
    edge_levels: int = 60,
    rel_tol: float = 1e-10,
    max_doublings: int = 5,
) -> float:
    """Integral of f over (-1, 1) via x = cos(theta) with panel doubling.

    f must accept numpy arrays.  Raises when doubling stops changing the
    result by less than rel_tol before the refinement budget runs out.
    """

    def compute(p: int, lv: int) -> float:
        thetas, wts = _theta_rule(p, nodes, lv)
        xs = np.cos(thetas)
        return float(np.sum(wts * np.sin(thetas) * f(xs)))

    prev = compute(panels, edge_levels)
    for i in range(1, max_doublings + 1):
        cur = compute(panels * 2**i, edge_levels + 8 * i)
        if abs(cur - prev) <= rel_tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureError("panel doubling did not stabilize the integral")


def total_mass(base: FamilyDescriptor, params: ExtensionParams, **kwargs) -> float:
    """Continuous part plus point masses; equals one for a healthy model."""
    model = build_measure(base, params, **kwargs)
    cont = integrate_against(model.density)
    return cont + model.mass_total


def gram_matrix(
    base: FamilyDescriptor,
    params: ExtensionParams,
    m_max: int,
    *,
    rel_tol: float = 1e-9,
    panels: int = 64,
    nodes: int = 32,
    edge_levels: int = 60,
    max_doublings: int = 5,
    model: MeasureModel | None = None,
) -> np.ndarray:
    """Gram matrix of the first m_max+1 orthonormal extended polynomials.

    Entries integrate p_i p_j against the reconstructed density (cos-theta
    substitution, graded composite Gauss) and add the mass-point terms; the
    result should be the identity.  Panel counts double until the max-norm
    change drops below rel_tol.
    """
    if model is None:
        model = build_measure(base, params)
    ext = extend(base.sequence(), params)

    def assemble(p: int, lv: int) -> np.ndarray:
        thetas, wts = _theta_rule(p, nodes, lv)
        xs = np.cos(thetas)
        V = np.array(_eval_on(ext, m_max, xs).values)
        w = wts * np.sin(thetas) * model.density(xs)
        G = (V * w) @ V.T
        for loc, m in model.masses:
            v = np.array(_eval_on(ext, m_max, float(loc)).values)
            G += m * np.outer(v, v)
        return G

    prev = assemble(panels, edge_levels)
    for i in range(1, max_doublings + 1):
        cur = assemble(panels * 2**i, edge_levels + 8 * i)
        if float(np.max(np.abs(cur - prev))) <= rel_tol:
            return cur
        prev = cur
    raise QuadratureError("Gram entries kept moving under panel doubling")


@dataclass(frozen=True)
class ChristoffelLimit:
    """Samples (n, n*lambda_n(x)) plus the Richardson-extrapolated limit."""

    samples: tuple
    limit: float


def christoffel_limit_estimate(
    seq: CoefficientSequence, x: float, n_list: Sequence[int]
) -> ChristoffelLimit:
    """Estimate lim n*lambda_n(x) along n_list, assuming an O(1/n) error.

    The limit equals pi * density(x) * sqrt(1-x^2) for measures in the
    asymptotically-constant class, which is how densities get verified.
    """
    ns = sorted(set(int(n) for n in n_list))
    if not ns or ns[0] < 1:
        raise ValueError("n_list must hold positive degrees")
    targets = set(ns)
    samples = []
    s = 0.0
    prev, cur, a_cur = 0.0, 1.0, 0.0
    s += cur * cur
    if 0 in targets:
        raise ValueError("degrees must be >= 1")
    for k in range(ns[-1]):
        a_next = seq.a(k + 1)
        nxt = ((x - seq.b(k)) * cur - a_cur * prev) / a_next
        prev, cur, a_cur = cur, nxt, a_next
        s += cur * cur
        n = k + 1
        if n in targets:
            samples.append((n, n / s))
    if len(samples) >= 2:
        (n1, v1), (n2, v2) = samples[-2], samples[-1]
        limit = (n2 * v2 - n1 * v1) / (n2 - n1)
    else:
        limit = samples[-1][1]
    return ChristoffelLimit(samples=tuple(samples), limit=float(limit))


@dataclass(frozen=True)
class SumLimitReport:
    """Normalized Cesaro sums for a Grosjean base against their closed limits."""

    sum_base: float
    sum_associated: float
    sum_mixed: float
    limit_base: float
    limit_associated: float
    limit_mixed: float


def sum_limit_checks(alpha, x: float, n: int) -> SumLimitReport:
    """(1/n) sums of p_k^2, [p_k^(1)]^2 and p_k p_{k-1}^(1) with their limits."""
    a = float(alpha)
    if not -1.0 < a < 0.0:
        raise ValueError("need -1 < alpha < 0")
    if not -1.0 < x < 1.0:
        raise ValueError("interior point required")
    from .families import grosjean1_coeffs

    seq = grosjean1_coeffs(alpha)
    sh = shift(seq, 1)
    s_base = 1.0
    s_assoc = 1.0
    s_mixed = 0.0
    p_prev, p_cur, ap = 0.0, 1.0, 0.0
    u_prev, u_cur, au = 0.0, 1.0, 0.0
    for k in range(n):
        ap_next = seq.a(k + 1)
        p_next = ((x - seq.b(k)) * p_cur - ap * p_prev) / ap_next
        s_mixed += p_next * u_cur  # p_{k+1} * p_k^(1)
        au_next = sh.a(k + 1)
        u_next = ((x - sh.b(k)) * u_cur - au * u_prev) / au_next
        p_prev, p_cur, ap = p_cur, p_next, ap_next
        u_prev, u_cur, au = u_cur, u_next, au_next
        if k < n - 1:
            s_assoc += u_cur * u_cur
        s_base += p_cur * p_cur
    root = math.sqrt(1.0 - x * x)
    sin_a = math.sin(-math.pi * a)
    ratio = (1.0 - x) ** a * (1.0 + x) ** (-a - 1.0)
    limit_base = 1.0 / (root * sin_a * ratio)
    limit_assoc = (-2.0 * a * (1.0 + a)) / (root * sin_a) * ratio
    limit_mixed = math.sqrt(-2.0 * a * (1.0 + a)) * math.cos(math.pi * a) / (root * sin_a)
    return SumLimitReport(
        sum_base=s_base / n,
        sum_associated=s_assoc / n,
        sum_mixed=s_mixed / n,
        limit_base=limit_base,
        limit_associated=limit_assoc,
        limit_mixed=limit_mixed,
    )


def christoffel_function(seq: CoefficientSequence, n: int, x) -> float:
    """Convenience re-export of the recurrence-level Christoffel function."""
    return christoffel(seq, n, x)
