"""Constant term of the q-Dyson product, computed and cross-checked four ways."""

from .errors import (
    DegreeBoundExceeded,
    DimensionMismatch,
    DivisionByZero,
    DuplicateNode,
    GridSizeMismatch,
    NonExactDivision,
    NonPolynomialResult,
    QDysonError,
    ScaleLimitExceeded,
    SignOrPowerMismatch,
    ZeroParameter,
)
from .laurent import LaurentPoly, build_F, build_fq, evaluate_F_at
from .nullstellensatz import (
    RATFUNC_Q,
    RATIONALS,
    Evaluator,
    Field,
    coefficient_by_interpolation,
    coefficient_by_reduction,
    node_weight,
)
from .qdyson import (
    ENGINE_NAMES,
    Budgets,
    ParameterVector,
    closed_form_ct,
    ct_interpolation,
    ct_naive,
    ct_single_point,
    dyson_q1,
    F_special_closed,
    identity_checks,
    phi_prime_closed,
    reduce_zero_params,
    run_engine,
    standard_grids,
    verify_vanishing,
)
from .qpoly import RatFunc, UniPoly, eval_at_q1, exact_div, gaussian_binomial, qpoch

__version__ = "0.1.0"
