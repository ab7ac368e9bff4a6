"""Exact interpolatory cubature on tuples of roots of unity."""

__version__ = "0.1.0"

from .cubature import (
    CubatureRule,
    PrecisionReport,
    compute_weights,
    equal_weight_basis_search,
    in_A,
    mixed_exactness_check,
    polynomial_basis_weights,
    precision_basis_report,
    rule_sum,
    verify_exactness,
)
from .cyclo import CycNum, cyclotomic_poly, root_power
from .design import (
    Design,
    IndicatorFn,
    RegularityResult,
    conjugate_class,
    evaluate_monomial,
    indicator_coefficients,
    is_regular_fraction,
    reduce_exponent,
    reduced_exponents,
    support,
)
from .exceptions import CubatureError, IncorrectPairError, InvariantError, PreconditionError
from .interp import MonomialBasis, evaluation_matrix, exact_rank, is_correct_pair, quotient_basis
from .measures import (
    DiscreteMeasure,
    FloatMoments,
    GaussianMoments,
    GaussianSampler,
    GaussianSpec,
    MomentProvider,
    Nullity,
    discrete_moment,
    gaussian_holomorphic_moment,
    gaussian_null_moment_predicate,
    gaussian_sampler,
    mc_estimate_moment,
)
