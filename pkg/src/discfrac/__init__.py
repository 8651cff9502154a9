"""Discrete fractional calculus on shifted integer grids.

Delta and nabla, left and right, Riemann and Caputo fractional sums and
differences under interchangeable floating and exact-rational scalar
backends, plus executable checkers for the dual identities, reflection
identities, Riemann-Caputo relations, and a registry of monotonicity
theorems with an exhaustive counterexample search.
"""

from .backends import FLOATING, RATIONAL, GammaValue, as_fraction, get_backend
from .errors import (
    BackendOverflow,
    BudgetExceeded,
    DirectFormIntegerOrder,
    DiscfracError,
    DomainError,
    EmptyValues,
    GridTooShort,
    PoleAmbiguous,
    UnitMismatch,
)
from .grids import Direction, GridFunction, Verdict, integer_difference, make_grid_function, q_reflect
from .kernels import KernelCoefficient, binomial_weight, falling, gamma_ratio, rising, sum_kernel
from .operators import (
    Family,
    Formulation,
    Kind,
    OperatorSpec,
    Side,
    apply_operator,
    caputo_difference,
    caputo_from_riemann,
    caputo_inversion_residual,
    fractional_sum,
    order_ceiling,
    riemann_difference,
    semigroup_diagnostic,
)
from .dualities import CheckReport, IdentityId, check_identity, run_identity_suite
from .monotone import (
    TheoremCase,
    TheoremVerdict,
    THEOREMS,
    evaluate_theorem,
    is_nu_monotone,
    make_case,
    search_counterexamples,
    theorem_report,
)

__version__ = "0.1.0"

__all__ = [
    "FLOATING",
    "RATIONAL",
    "GammaValue",
    "as_fraction",
    "get_backend",
    "DiscfracError",
    "DomainError",
    "PoleAmbiguous",
    "BackendOverflow",
    "UnitMismatch",
    "GridTooShort",
    "EmptyValues",
    "DirectFormIntegerOrder",
    "BudgetExceeded",
    "Direction",
    "GridFunction",
    "Verdict",
    "make_grid_function",
    "integer_difference",
    "q_reflect",
    "falling",
    "rising",
    "gamma_ratio",
    "sum_kernel",
    "binomial_weight",
    "KernelCoefficient",
    "Kind",
    "Side",
    "Family",
    "Formulation",
    "OperatorSpec",
    "order_ceiling",
    "apply_operator",
    "fractional_sum",
    "riemann_difference",
    "caputo_difference",
    "caputo_from_riemann",
    "caputo_inversion_residual",
    "semigroup_diagnostic",
    "IdentityId",
    "CheckReport",
    "check_identity",
    "run_identity_suite",
    "THEOREMS",
    "TheoremCase",
    "TheoremVerdict",
    "make_case",
    "evaluate_theorem",
    "is_nu_monotone",
    "search_counterexamples",
    "theorem_report",
    "__version__",
]
