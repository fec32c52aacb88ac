"""Evaluation of the Pearcey integral

    P(x, y) = int_0^inf exp(-t^4 - x t^2) cos(y t) dt

for complex x and y, by three series expansions (small |x|; large |x|; large
|x| and |y|), a convergent power series, and a high-precision quadrature
oracle.
"""

from .evaluator import (
    DEFAULT_POLICY,
    SelectorPolicy,
    classify_region,
    evaluate,
    evaluate_method,
    optimal_truncation,
    pearcey_oscillatory,
)
from .large_x import bound_large_x, choose_sigma, eval_large_x, term_large_x_kummer
from .large_xy import coeff_an, eval_large_xy, validity_large_xy
from .numerics import gamma_real, hermite_scaled, hyp_pfq, kummer_m_negint
from .reference import (
    OracleConfig,
    berry_howls_sum,
    oracle_quadrature,
    oracle_value,
    relative_error,
    truncation_radius,
)
from .results import (
    DomainError,
    EvalResult,
    MethodTag,
    NonConvergenceError,
    OracleConvergenceError,
    PearceyError,
    PearceyOverflowError,
    RegionError,
    TruncationReport,
)
from .small_x import bound_small_x, coeff_pk, coeff_pk_recurrence, eval_small_x

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_POLICY",
    "DomainError",
    "EvalResult",
    "MethodTag",
    "NonConvergenceError",
    "OracleConfig",
    "OracleConvergenceError",
    "PearceyError",
    "PearceyOverflowError",
    "RegionError",
    "SelectorPolicy",
    "TruncationReport",
    "berry_howls_sum",
    "bound_large_x",
    "bound_small_x",
    "choose_sigma",
    "classify_region",
    "coeff_an",
    "coeff_pk",
    "coeff_pk_recurrence",
    "eval_large_x",
    "eval_large_xy",
    "eval_small_x",
    "evaluate",
    "evaluate_method",
    "gamma_real",
    "hermite_scaled",
    "hyp_pfq",
    "kummer_m_negint",
    "optimal_truncation",
    "oracle_quadrature",
    "oracle_value",
    "pearcey_oscillatory",
    "relative_error",
    "term_large_x_kummer",
    "truncation_radius",
    "validity_large_xy",
]
