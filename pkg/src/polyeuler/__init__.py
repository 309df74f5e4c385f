"""Exact construction and mechanical verification of poly-Euler and
degenerate poly-Euler polynomial families over Q[lam][x]."""

from .algebra import (
    AlgebraError,
    ExactRational,
    IndexOutOfRange,
    LambdaPoly,
    LeadingCoefficientNotInvertible,
    NonzeroInnerConstant,
    OrderExceeded,
    TruncatedSeries,
    ValuationMismatch,
    XLambdaPoly,
)
from .families import (
    UnknownIdentity,
    closed_form_rhs,
    deg_poly_euler,
    deg_poly_euler_number,
    poly_euler,
    poly_euler_number,
    polylog_stirling_coeff,
)
from .identities import (
    DEFAULT_K_SET,
    IdentityReport,
    IdentitySpec,
    check_identity,
    must_pass_ok,
    register_builtin,
    reports_to_document,
    run_suite,
)
from .sequences import (
    DEFAULT_ORDER,
    classical_family,
    deg_exp,
    deg_log,
    deg_polylog_compose,
    degenerate_family,
    falling_factorial,
    falling_factorial_deg,
    poly_bernoulli,
    polylog_compose,
    stirling,
    stirling_table,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "DEFAULT_K_SET",
    "DEFAULT_ORDER",
    "ExactRational",
    "IdentityReport",
    "IdentitySpec",
    "IndexOutOfRange",
    "LambdaPoly",
    "LeadingCoefficientNotInvertible",
    "NonzeroInnerConstant",
    "OrderExceeded",
    "TruncatedSeries",
    "UnknownIdentity",
    "ValuationMismatch",
    "XLambdaPoly",
    "check_identity",
    "classical_family",
    "closed_form_rhs",
    "deg_exp",
    "deg_log",
    "deg_poly_euler",
    "deg_poly_euler_number",
    "deg_polylog_compose",
    "degenerate_family",
    "falling_factorial",
    "falling_factorial_deg",
    "must_pass_ok",
    "poly_bernoulli",
    "poly_euler",
    "poly_euler_number",
    "polylog_compose",
    "polylog_stirling_coeff",
    "register_builtin",
    "reports_to_document",
    "run_suite",
    "stirling",
    "stirling_table",
]
