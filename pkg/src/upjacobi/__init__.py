"""Anti-associated orthogonal polynomials via upward extension of Jacobi matrices.

The package builds new orthogonal families by prepending rows and columns
to a Jacobi matrix, evaluates them by recurrence and by closed form,
reconstructs their orthogonality measures (continuous density plus mass
points), and derives the exact fourth-order differential equation they
satisfy when the base family is classical.
"""

from .extension import (
    ExtensionParams,
    QLadder,
    eval_anti_closed,
    eval_anti_direct,
    eval_anti_orthonormal,
    extend,
    q_ladder,
    q_values,
    shift_identity_check,
    truncate_params,
)
from .families import (
    ClassicalOperator,
    FamilyDescriptor,
    GrosjeanParam,
    chebyshev_coeffs,
    classical_operator,
    darboux_asymptotic,
    grosjean1_coeffs,
    grosjean1_weight,
    grosjean2_coeffs,
    grosjean2_weight,
    jacobi_classical_operator,
    jacobi_coeffs,
)
from .measure import (
    ChristoffelLimit,
    MassPointError,
    MeasureModel,
    QuadratureError,
    SumLimitReport,
    bernstein_szego_t_density,
    bernstein_szego_u_density,
    build_measure,
    christoffel_limit_estimate,
    find_mass_points,
    gram_matrix,
    grosjean_extension_density,
    integrate_against,
    mass_at,
    mass_point_equation,
    outlier_eigenvalues,
    stieltjes_ratio_estimate,
    stieltjes_ratio_limit,
    sum_limit_checks,
    total_mass,
)
from .ode import (
    DegenerateCaseError,
    FourthOrderODE,
    adjoint,
    conjugated_adjoint,
    eliminate_second_derivative,
    fourth_order_ode,
    hypergeometric_operator,
    second_order_ode,
    sigma_derivative_pair,
)
from .polynomials import (
    ExactDivisionError,
    DensePolynomial,
    PolyOperator,
    poly_gcd,
    proportional,
    resultant,
)
from .recurrence import (
    CoefficientSequence,
    EvaluationOverflowError,
    EvaluationVector,
    NormalizationLadder,
    christoffel,
    eval_associated,
    eval_monic,
    eval_monic_with_derivative,
    eval_orthonormal,
    eval_orthonormal_with_derivative,
    expand_monic,
    from_exact,
    from_table,
    gamma_ladder,
    mixed_sum,
    mixed_sum_christoffel_darboux,
    shift,
    trace_class_score,
)
from .spectral import (
    QuadratureRule,
    TridiagonalN,
    eigenvalues,
    extreme_eigenvalues,
    gauss_rule,
    gershgorin_interval,
    sturm_count,
    truncate,
    zeros,
)

__version__ = "0.1.0"
