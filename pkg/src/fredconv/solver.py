"""Second-kind Fredholm convolution equations solved in coefficient space.

The equation is

    y(x) = rhs(x) + mu * int_c^d k(x - s) y(s) ds,    x in [lo, hi],

with ``[c, d]`` inside ``[lo, hi]``. The unknown is expanded on ``[lo, hi]``;
its restriction to ``[c, d]`` is convolved with ``k`` approximated on
``[lo - d, hi - c]``, which makes the convolution land exactly on ``[lo, hi]``
with interval ratio ``r = (hi - lo) / (d - c) >= 1``. The truncated system is
solved densely and the truncation is doubled until the solution settles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy import linalg

from .exceptions import ConvergenceError, IntervalError, SingularSystemError
from .fredholm import convolution_matrix
from .legendre import (
    Interval,
    LegendreSeries,
    approximate,
    gauss_legendre_rule,
    restrict,
)
from .oracle import fredholm_integral

__all__ = [
    "IntegralEquation",
    "RestrictionOperator",
    "restriction_operator",
    "solve_second_kind",
    "equation_residual",
    "Solution",
]

Function = Union[Callable, LegendreSeries, float, complex]


@dataclass(frozen=True)
class IntegralEquation:
    """y = rhs + mu * int_{integration_interval} kernel(x - s) y(s) ds on ``output_interval``.

    ``kernel`` and ``rhs`` may be callables, Legendre series, or constants.
    A series kernel must cover ``[lo - d, hi - c]``.
    """

    kernel: Function
    mu: complex
    rhs: Function
    integration_interval: Interval
    output_interval: Interval

    def __post_init__(self):
        inner = Interval.coerce(self.integration_interval)
        outer = Interval.coerce(self.output_interval)
        if not outer.contains(inner):
            raise IntervalError(f"integration interval {inner} is not inside {outer}")
        object.__setattr__(self, "integration_interval", inner)
        object.__setattr__(self, "output_interval", outer)
        if isinstance(self.kernel, LegendreSeries) and not self.kernel.interval.contains(
            self.kernel_interval
        ):
            raise IntervalError(
                f"kernel series on {self.kernel.interval} does not cover {self.kernel_interval}"
            )

    @property
    def kernel_interval(self) -> Interval:
        """Where the kernel is evaluated: ``[lo - d, hi - c]``."""
        (c, d), (lo, hi) = self.integration_interval, self.output_interval
        return Interval(lo - d, hi - c)

    @property
    def ratio(self) -> float:
        """Interval ratio r of the convolution matrix used by the solver."""
        return self.output_interval.length / self.integration_interval.length

    def kernel_function(self) -> Callable:
        return _as_function(self.kernel)

    def rhs_function(self) -> Callable:
        return _as_function(self.rhs)


def _as_function(obj) -> Callable:
    if callable(obj):
        return obj
    value = obj
    return lambda x: np.full(np.shape(x), value, dtype=np.result_type(value, float))


def _as_series(obj, interval: Interval, tol: float) -> LegendreSeries:
    if isinstance(obj, LegendreSeries):
        if obj.interval == interval:
            return obj
        return restrict(obj, interval)
    return approximate(_as_function(obj), interval, tol=tol)


@dataclass(frozen=True)
class RestrictionOperator:
    """Maps degree-M coefficients on ``outer`` to those of the restriction to ``inner``."""

    matrix: np.ndarray
    outer: Interval
    inner: Interval

    def apply(self, s: LegendreSeries) -> LegendreSeries:
        if s.interval != self.outer:
            raise IntervalError(f"series lives on {s.interval}, operator expects {self.outer}")
        n = self.matrix.shape[1]
        if s.degree >= n:
            raise ValueError(f"series degree {s.degree} exceeds operator degree {n - 1}")
        return LegendreSeries(self.inner, self.matrix[:, : s.coeffs.size] @ s.coeffs)


def restriction_operator(M: int, outer, inner) -> RestrictionOperator:
    """(M+1) x (M+1) matrix whose column j re-expands P_j(outer) on ``inner``.

    Built by (M+1)-point Gauss projection, which is exact for degree-M data.
    """
    outer, inner = Interval.coerce(outer), Interval.coerce(inner)
    if not outer.contains(inner):
        raise IntervalError(f"{inner} is not contained in {outer}")
    if M < 0:
        raise ValueError("M must be non-negative")
    if inner == outer:
        return RestrictionOperator(np.eye(M + 1), outer, inner)
    rule = gauss_legendre_rule(M + 1)
    u = rule.nodes
    V = npleg.legvander(outer.to_unit(inner.from_unit(u)), M)
    proj = npleg.legvander(u, M).T * rule.weights * (np.arange(M + 1) + 0.5)[:, None]
    return RestrictionOperator(proj @ V, outer, inner)


@dataclass(frozen=True)
class Solution:
    """Solution series with its diagnostics."""

    y: LegendreSeries
    residual: float
    condition: float
    iterations: int


def _condition_1norm(A: np.ndarray, lu_piv) -> float:
    lu, piv = lu_piv
    (gecon,) = linalg.get_lapack_funcs(("gecon",), (lu,))
    anorm = np.linalg.norm(A, 1)
    rcond, info = gecon(lu, anorm, norm="1")
    if info != 0:
        raise SingularSystemError(f"condition estimate failed (info={info})")
    return np.inf if rcond == 0 else 1.0 / rcond


def _system(eq: IntegralEquation, kernel: LegendreSeries, K: int) -> np.ndarray:
    # Phi maps the unknown's coefficients on [lo, hi] to those of the integral term
    (c, d) = eq.integration_interval
    P = restriction_operator(K, eq.output_interval, eq.integration_interval).matrix
    rows = max(kernel.degree, K)
    R = convolution_matrix(kernel.coeffs, eq.ratio, N=K, M=rows).entries
    Phi = 0.5 * (d - c) * (R[: K + 1] @ P)
    return np.eye(K + 1) - eq.mu * Phi


def equation_residual(eq: IntegralEquation, y: LegendreSeries, n: int = 50) -> float:
    """max |y - rhs - mu * int k(x-s) y(s) ds| over n Gauss points of the output interval.

    The integral is evaluated by Gauss quadrature of the kernel function itself,
    independently of the convolution matrix.
    """
    x, _ = gauss_legendre_rule(n).on(eq.output_interval)
    k = eq.kernel_function()
    nq = max(64, 2 * y.degree + 2)
    integral = fredholm_integral(k, y, x, eq.integration_interval, nq)
    return float(np.max(np.abs(y(x) - eq.rhs_function()(x) - eq.mu * integral)))


def solve_second_kind(
    eq: IntegralEquation,
    tol: float = 1e-14,
    max_degree: int = 4096,
    full_output: bool = False,
):
    """Solve ``eq`` adaptively; returns the solution series on the output interval.

    Starting from the larger of the kernel and rhs degrees (at least 16), the
    truncation is doubled until the trailing coefficients of y fall below
    ``tol * max|y_k|`` and the residual at 50 points is at most
    ``10 * tol * max(1, max|y|)``.

    Raises:
        SingularSystemError: if the 1-norm condition estimate exceeds 1/tol.
        ConvergenceError: if the truncation would exceed ``max_degree``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    kernel = _as_series(eq.kernel, eq.kernel_interval, tol)
    rhs = _as_series(eq.rhs, eq.output_interval, tol)
    K = max(kernel.degree, rhs.degree, 16)
    iterations = 0
    while True:
        if K > max_degree:
            raise ConvergenceError(
                f"solution not resolved to tol={tol:g} below degree {max_degree}"
            )
        iterations += 1
        A = _system(eq, kernel, K)
        b = np.zeros(K + 1, dtype=np.result_type(A, rhs.coeffs))
        b[: min(K + 1, rhs.coeffs.size)] = rhs.coeffs[: K + 1]
        lu_piv = linalg.lu_factor(A, check_finite=True)
        cond = _condition_1norm(A, lu_piv)
        if not cond < 1.0 / tol:
            raise SingularSystemError(
                f"I - mu*K is singular or ill-conditioned (condition ~ {cond:.3g})"
            )
        coeffs = linalg.lu_solve(lu_piv, b)
        y = LegendreSeries(eq.output_interval, coeffs)
        scale = np.max(np.abs(coeffs))
        tail = max(2, (K + 1) // 8)
        if scale == 0 or np.all(np.abs(coeffs[-tail:]) <= tol * scale):
            x, _ = gauss_legendre_rule(50).on(eq.output_interval)
            res = equation_residual(eq, y)
            if res <= 10 * tol * max(1.0, float(np.max(np.abs(y(x))))):
                if full_output:
                    return Solution(y, res, cond, iterations)
                return y
        K *= 2
