"""Stable Legendre-coefficient matrices for Fredholm convolution operators."""

from .exceptions import (
    ConvergenceError,
    FredconvError,
    IntervalError,
    NumericalError,
    SingularSystemError,
)
from .fredholm import (
    FredholmMatrix,
    WMatrix,
    build_fredholm_matrix,
    build_fredholm_matrix_naive,
    build_w_matrix,
    convolution_matrix,
    first_column,
    fredholm_conv,
    recurrence_step,
    zeroth_and_first_rows,
    zeroth_column,
)
from .legendre import (
    Interval,
    LegendreSeries,
    approximate,
    gauss_legendre_rule,
    integration_matrix,
    interpolate,
    load_series,
    reflect,
    restrict,
    save_series,
    x_multiplication_matrix,
)
from .solver import IntegralEquation, restriction_operator, solve_second_kind
from .spectra import eigenvalues, operator_section, pseudospectra

__all__ = [
    "ConvergenceError",
    "FredconvError",
    "IntervalError",
    "NumericalError",
    "SingularSystemError",
    "FredholmMatrix",
    "WMatrix",
    "build_fredholm_matrix",
    "build_fredholm_matrix_naive",
    "build_w_matrix",
    "convolution_matrix",
    "first_column",
    "fredholm_conv",
    "recurrence_step",
    "zeroth_and_first_rows",
    "zeroth_column",
    "Interval",
    "LegendreSeries",
    "approximate",
    "gauss_legendre_rule",
    "integration_matrix",
    "interpolate",
    "load_series",
    "reflect",
    "restrict",
    "save_series",
    "x_multiplication_matrix",
    "IntegralEquation",
    "restriction_operator",
    "solve_second_kind",
    "eigenvalues",
    "operator_section",
    "pseudospectra",
]
