"""Brute-force reference constructions by tensor Gauss-Legendre quadrature.

Nothing here uses the recurrences of :mod:`fredconv.fredholm`; every entry is
an explicit double integral evaluated with enough points to be exact for the
polynomial integrands involved. Cost is cubic or worse, which is fine for the
desk-scale sizes these are meant for.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.polynomial import legendre as npleg

from .exceptions import IntervalError
from .fredholm import FredholmMatrix, build_fredholm_matrix, kernel_ratio
from .legendre import (
    Interval,
    LegendreSeries,
    gauss_legendre_rule,
    reflect,
    restrict,
)

__all__ = [
    "oracle_fredholm_matrix",
    "oracle_w_matrix",
    "oracle_volterra_matrix",
    "volterra_fredholm_matrix",
    "cancellation_demo",
    "CancellationGrids",
    "fredholm_integral",
]


def _weighted_projection(u: np.ndarray, w: np.ndarray, degree: int) -> np.ndarray:
    # rows: P_k(u_i) * w_i * (2k+1)/2, so that proj @ values gives Legendre coefficients
    V = npleg.legvander(u, degree)
    return (V * w[:, None]).T * (0.5 * (2 * np.arange(degree + 1) + 1))[:, None]


def oracle_fredholm_matrix(
    f: LegendreSeries,
    M: int | None = None,
    N: int | None = None,
    r: float | None = None,
    oversample: int = 1,
) -> FredholmMatrix:
    """R[m, n] = (2m+1)/(2r) * int_{-r}^{r} int_{-1}^{1} f(x-t) P_n(t) dt P_m(x/r) dx.

    ``f`` is the kernel on ``[-(r+1), r+1]``. ``oversample`` multiplies both
    point counts (used to check the oracle against itself).
    """
    a = f.coeffs
    r = kernel_ratio(f) if r is None else float(r)
    M = f.degree if M is None else int(M)
    N = M if N is None else int(N)
    nt = oversample * ((f.degree + N) // 2 + 1)
    nx = oversample * (f.degree + M) // 2 + oversample
    t_rule = gauss_legendre_rule(nt)
    x_rule = gauss_legendre_rule(nx)
    t, wt = t_rule.nodes, t_rule.weights
    x = r * x_rule.nodes
    F = npleg.legval((x[:, None] - t[None, :]) / (r + 1), a)
    inner = F @ (npleg.legvander(t, N) * wt[:, None])
    R = _weighted_projection(x_rule.nodes, x_rule.weights, M) @ inner
    return FredholmMatrix(R, r, M)


def oracle_w_matrix(L: int, r: float, variant: str = "plain") -> np.ndarray:
    """W_L or W-hat_L by projecting the defining differences onto the target basis."""
    n = L + 2
    rule = gauss_legendre_rule(n)
    u = rule.nodes
    if variant == "plain":
        x = r * u
        plus, minus = (x + 1) / (r + 1), (x - 1) / (r + 1)
    elif variant == "hatted":
        plus, minus = (r - u) / (r + 1), -(r + u) / (r + 1)
    else:
        raise ValueError(f"unknown W variant {variant!r}")
    diff = npleg.legvander(plus, L + 1) - npleg.legvander(minus, L + 1)
    return _weighted_projection(u, rule.weights, L) @ diff


def oracle_volterra_matrix(f: LegendreSeries, N: int) -> np.ndarray:
    """(M+N+2) x (N+1) matrix of the left Volterra convolution with ``f``.

    ``f``'s coefficients are read on [-1, 1] whatever its nominal interval
    (length 2 is required). Column n holds the coefficients, in ``P_k(x+1)``
    on [-2, 0], of ``int_{-1}^{x+1} f(x-t) P_n(t) dt``.
    """
    if abs(f.interval.length - 2.0) > 1e-12:
        raise IntervalError("Volterra kernels live on an interval of length 2")
    a = f.coeffs
    M = f.degree
    size = M + N + 1
    x_rule = gauss_legendre_rule(size + 1)
    t_rule = gauss_legendre_rule((M + N) // 2 + 1)
    xi = x_rule.nodes
    # inner rule on [-1, xi_i] for every outer node
    half = 0.5 * (xi + 1.0)
    t = -1.0 + half[:, None] * (t_rule.nodes[None, :] + 1.0)
    wt = half[:, None] * t_rule.weights[None, :]
    X = xi - 1.0
    F = npleg.legval(X[:, None] - t, a) * wt
    P = npleg.legvander(t, N)
    H = np.einsum("iq,iqn->in", F, P)
    return _weighted_projection(xi, x_rule.weights, size) @ H


def _check_unit_ratio(f: LegendreSeries) -> None:
    lo, hi = f.interval
    if abs(lo + 2.0) > 1e-12 or abs(hi - 2.0) > 1e-12:
        raise IntervalError("the Volterra splitting needs a kernel on [-2, 2] (r = 1)")


def volterra_fredholm_matrix(f: LegendreSeries, N: int | None = None) -> np.ndarray:
    """R-hat = V_{f1} + I V_{f2-hat} I, the r = 1 matrix assembled from two Volterra pieces."""
    _check_unit_ratio(f)
    N = f.degree if N is None else int(N)
    f1 = restrict(f, Interval(0.0, 2.0))
    f2_hat = reflect(restrict(f, Interval(-2.0, 0.0)))
    V1 = oracle_volterra_matrix(f1, N)
    V2 = oracle_volterra_matrix(f2_hat, N)
    alt_rows = (-1.0) ** np.arange(V2.shape[0])
    alt_cols = (-1.0) ** np.arange(V2.shape[1])
    return V1 + alt_rows[:, None] * V2 * alt_cols[None, :]


class CancellationGrids(NamedTuple):
    volterra: np.ndarray
    stable: np.ndarray


def cancellation_demo(f: LegendreSeries) -> CancellationGrids:
    """Entrywise magnitudes of R-hat (Volterra combination) and R (stable build)."""
    _check_unit_ratio(f)
    R_hat = volterra_fredholm_matrix(f)
    R = build_fredholm_matrix(f).entries
    return CancellationGrids(np.abs(R_hat), np.abs(R))


def fredholm_integral(kernel, g, x, interval, n: int) -> np.ndarray:
    """``int_c^d kernel(x - t) g(t) dt`` at points ``x`` by n-point Gauss quadrature."""
    t, w = gauss_legendre_rule(n).on(interval)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    vals = kernel(x[:, None] - t[None, :]) * (w * g(t))[None, :]
    return vals.sum(axis=1)
