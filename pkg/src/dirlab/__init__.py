"""dirlab: numerical experiments with Dirichlet polynomials.

Modules
-------
sieve            smallest-prime-factor sieve and multiplicative functions
dirichlet        Dirichlet polynomials, zeta approximations, square identities
quadrature       Gauss-Legendre quadrature for band-limited integrands
meanvalues       mean values and explicit-constant inequalities
bohr             Bohr lift to the torus and supremum estimation
random_dirichlet Rademacher random polynomials and their bounds
criteria         Robin, Lagarias and Grytczuk inequalities; CA numbers
reports, cli     canonical reports and the ``dirlab`` command
"""

__version__ = "0.1.0"

from .exceptions import BudgetExceededError, CapacityError, ConstructionError, DegenerateSpacingError
from .sieve import (
    FactoredInteger,
    FactorSieve,
    build_sieve,
    cached_sieve,
    divisor_count_k,
    factorize,
    harmonic_number,
    omega_counts,
    restricted_divisor_count,
    sigma_divisor_sum,
)
from .dirichlet import (
    DirichletPolynomial,
    evaluate,
    rudin_shapiro_coefficients,
    sigma_u_estimate,
    square_identity_f1,
    square_identity_f3,
    zeta_approx,
    zeta_reference,
)
from .meanvalues import (
    AtomicMeasure,
    MeanValueReport,
    SpacingReport,
    delta_min,
    divisor_moment_ratio,
    fourier_mean,
    higher_moment_check,
    ingham_mordell_check,
    linear_spacing_coefficient,
    majorization_check,
    mean_value_integral,
    montgomery_vaughan_check,
    moment_square_function_check,
    mv_limit_formula,
    square_function_check,
)
from .bohr import (
    SupEstimate,
    TorusPolynomial,
    bohr_lower_bound,
    kronecker_sup,
    lift,
    queffelec_lower_bound,
    sup_estimate,
    torus_eval,
)
from .random_dirichlet import (
    CoefficientProfile,
    RademacherSample,
    SupremumStudy,
    coefficient_profile,
    expected_sup_mc,
    halasz_ratio_study,
    sample_signs,
    smooth_support,
    theorem_lb_bound,
    theorem_t2_bound,
)
from .criteria import (
    CaSequence,
    CriterionVerdict,
    ca_extrema_profile,
    colossally_abundant,
    ford_zero_free_sigma,
    grytczuk_check,
    lagarias_check,
    robin_check,
    robin_scan,
)
