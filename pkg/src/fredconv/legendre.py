"""Legendre series on arbitrary intervals.

A :class:`LegendreSeries` stores coefficients ``c[k]`` of ``P_k`` composed with
the affine map taking its interval onto ``[-1, 1]``. Scalars may be real or
complex throughout. This module also provides Gauss-Legendre quadrature, the
adaptive constructor :func:`approximate`, restriction and reflection, the
banded integration / x-multiplication matrices, and the JSON series format.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy import sparse

from .exceptions import ConvergenceError, IntervalError

__all__ = [
    "Interval",
    "LegendreSeries",
    "QuadratureRule",
    "eval_series",
    "approximate",
    "interpolate",
    "integration_matrix",
    "x_multiplication_matrix",
    "diagonal_matrix",
    "gauss_legendre_rule",
    "restrict",
    "reflect",
    "legendre_vandermonde",
    "series_to_dict",
    "series_from_dict",
    "save_series",
    "load_series",
]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
            raise IntervalError(f"invalid interval [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def coerce(cls, obj) -> "Interval":
        if isinstance(obj, Interval):
            return obj
        lo, hi = obj
        return cls(lo, hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def to_unit(self, x):
        """Map points of this interval onto [-1, 1]."""
        return (2.0 * np.asarray(x) - (self.lo + self.hi)) / (self.hi - self.lo)

    def from_unit(self, u):
        """Map points of [-1, 1] onto this interval."""
        return 0.5 * (self.hi - self.lo) * np.asarray(u) + self.center

    def contains(self, other: "Interval", rtol: float = 1e-14) -> bool:
        slack = rtol * max(self.length, abs(self.lo), abs(self.hi))
        return other.lo >= self.lo - slack and other.hi <= self.hi + slack

    def __iter__(self):
        yield self.lo
        yield self.hi


@dataclass(frozen=True, eq=False)
class LegendreSeries:
    """Finite Legendre expansion ``sum_k coeffs[k] * P_k(map(x))``.

    Instances are immutable; ``coeffs`` is stored as a read-only 1-D array of
    dtype float64 or complex128.
    """

    interval: Interval
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        interval = Interval.coerce(self.interval)
        c = np.array(self.coeffs, copy=True)
        if c.ndim == 0:
            c = c.reshape(1)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        c = c.astype(np.complex128 if np.iscomplexobj(c) else np.float64)
        c.flags.writeable = False
        object.__setattr__(self, "interval", interval)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.coeffs)

    def __call__(self, x):
        return eval_series(self, x)

    def __repr__(self):
        return (
            f"LegendreSeries(interval=[{self.interval.lo!r}, {self.interval.hi!r}], "
            f"degree={self.degree})"
        )


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def on(self, interval) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights mapped onto ``interval``."""
        iv = Interval.coerce(interval)
        return iv.from_unit(self.nodes), 0.5 * iv.length * self.weights

    def integrate(self, fn: Callable, interval=(-1.0, 1.0)):
        x, w = self.on(interval)
        return np.dot(w, fn(x))


def eval_series(s: LegendreSeries, x):
    """Evaluate ``s`` at ``x`` by Clenshaw's backward recurrence.

    Points outside ``s.interval`` are allowed; the result is then the
    polynomial continuation.
    """
    u = s.interval.to_unit(x)
    return npleg.legval(u, s.coeffs)


def legendre_vandermonde(u, degree: int) -> np.ndarray:
    """Matrix ``V[i, k] = P_k(u[i])`` for ``k = 0..degree``."""
    return npleg.legvander(np.asarray(u), degree)


def _newton_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(1, n):
            p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
        # p1 = P_n(x), p0 = P_{n-1}(x)
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(1, n):
        p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return x, dp


@functools.lru_cache(maxsize=64)
def _gauss(n: int) -> QuadratureRule:
    if n == 1:
        nodes, weights = np.zeros(1), np.full(1, 2.0)
    else:
        x, dp = _newton_nodes(n)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        order = np.argsort(x)
        x, w = x[order], w[order]
        # enforce exact symmetry of the rule
        nodes = 0.5 * (x - x[::-1])
        weights = 0.5 * (w + w[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights)


def gauss_legendre_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n)."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one quadrature point")
    return _gauss(n)


def _project(values: np.ndarray, rule: QuadratureRule, degree: int) -> np.ndarray:
    # c_k = (2k+1)/2 * sum_i w_i v_i P_k(x_i); one recurrence sweep, O(n) memory per step
    x = rule.nodes
    wv = rule.weights * values
    out = np.empty(degree + 1, dtype=np.result_type(values, np.float64))
    p0 = np.ones_like(x)
    p1 = x.copy()
    out[0] = 0.5 * wv.sum()
    if degree >= 1:
        out[1] = 1.5 * np.dot(wv, p1)
    for k in range(1, degree):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
        out[k + 1] = 0.5 * (2 * k + 3) * np.dot(wv, p1)
    return out


def _chop(c: np.ndarray, level: float, u: np.ndarray, bound: float) -> np.ndarray:
    # cut after the last coefficient above level * max|c|, then lengthen the
    # series until the dropped part stays within bound at the points u; a
    # step that fails to halve the discrepancy means the rest is rounding
    # noise, which more terms cannot remove
    scale = np.max(np.abs(c))
    if scale == 0:
        return c[:1]
    cut = np.nonzero(np.abs(c) > level * scale)[0][-1] + 1
    full = npleg.legval(u, c)
    gap = np.max(np.abs(full - npleg.legval(u, c[:cut])))
    while cut < c.size and gap > bound:
        nxt = min(c.size, cut + max(1, cut // 8))
        nxt_gap = np.max(np.abs(full - npleg.legval(u, c[:nxt])))
        if nxt_gap > 0.5 * gap:
            break
        cut, gap = nxt, nxt_gap
    return c[:cut]


def _noise_level(values: np.ndarray, c: np.ndarray) -> float:
    # rounding in the projection sums grows like n * eps relative to max|f|
    scale = np.max(np.abs(c))
    if scale == 0:
        return 0.0
    return 2.0 * values.size * _EPS * np.max(np.abs(values)) / scale


_EPS = np.finfo(float).eps


def interpolate(fn: Callable, interval, degree: int) -> LegendreSeries:
    """Degree-``degree`` interpolant of ``fn`` at Gauss-Legendre points."""
    iv = Interval.coerce(interval)
    rule = gauss_legendre_rule(degree + 1)
    values = _sample(fn, iv, rule)
    return LegendreSeries(iv, _project(values, rule, degree))


def _sample(fn, iv: Interval, rule: QuadratureRule) -> np.ndarray:
    values = np.asarray(fn(iv.from_unit(rule.nodes)))
    if values.shape != rule.nodes.shape:
        values = np.broadcast_to(values, rule.nodes.shape)
    if not np.all(np.isfinite(values)):
        raise ValueError("function returned non-finite values on the interval")
    return values


def approximate(
    fn: Callable,
    interval,
    tol: float = 1e-14,
    max_degree: int = 2**16,
) -> LegendreSeries:
    """Adaptively build a Legendre approximant of ``fn`` on ``interval``.

    ``fn`` is sampled at Gauss-Legendre points of doubling size until the last
    ``max(2, degree // 8)`` coefficients are all below ``tol * max|c|``; the
    result is then cut after its last coefficient above that level, and
    lengthened again if needed until it matches the samples to half the
    tolerance (relative to max|fn|).
    Requests below the rounding floor of the projection (about ``n * eps``
    relative) are served at that floor instead.

    Raises:
        ConvergenceError: if the degree would exceed ``max_degree``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    iv = Interval.coerce(interval)
    n = 17
    while True:
        rule = gauss_legendre_rule(n)
        values = _sample(fn, iv, rule)
        c = _project(values, rule, n - 1)
        scale = np.max(np.abs(c))
        level = max(tol, _noise_level(values, c))
        tail = max(2, (n - 1) // 8)
        if scale == 0 or np.all(np.abs(c[-tail:]) <= level * scale):
            bound = 0.5 * level * np.max(np.abs(values))
            u = np.concatenate([[-1.0], rule.nodes, [1.0]])
            return LegendreSeries(iv, _chop(c, level, u, bound))
        n = 2 * n - 1
        if n - 1 > max_degree:
            raise ConvergenceError(
                f"function not resolved to tol={tol:g} below degree {max_degree}"
            )


def integration_matrix(L: int) -> sparse.dia_array:
    """(L+2) x (L+1) matrix taking coefficients of S to those of an antiderivative."""
    n = np.arange(L + 1)
    sub = 1.0 / (2 * n + 1)
    sup = -1.0 / (2 * n + 1)
    sup[0] = 0.0
    return sparse.dia_array((np.vstack([sub, sup]), [-1, 1]), shape=(L + 2, L + 1))


def x_multiplication_matrix(L: int) -> sparse.dia_array:
    """(L+2) x (L+1) matrix taking coefficients of S to those of x*S."""
    n = np.arange(L + 1)
    sub = (n + 1) / (2 * n + 1)
    sup = n / (2 * n + 1)
    return sparse.dia_array((np.vstack([sub, sup]), [-1, 1]), shape=(L + 2, L + 1))


def diagonal_matrix(M: int) -> sparse.dia_array:
    """diag(1, 1/3, ..., 1/(2M+1))."""
    d = 1.0 / (2 * np.arange(M + 1) + 1)
    return sparse.dia_array((d[None, :], [0]), shape=(M + 1, M + 1))


def restrict(s: LegendreSeries, sub) -> LegendreSeries:
    """Re-expand ``s`` on the sub-interval ``sub`` (same degree).

    Raises:
        IntervalError: if ``sub`` is not contained in ``s.interval``.
    """
    sub = Interval.coerce(sub)
    if not s.interval.contains(sub):
        raise IntervalError(f"{sub} is not contained in {s.interval}")
    rule = gauss_legendre_rule(s.degree + 1)
    values = eval_series(s, sub.from_unit(rule.nodes))
    return LegendreSeries(sub, _project(values, rule, s.degree))


def reflect(s: LegendreSeries) -> LegendreSeries:
    """The series of ``x -> s(-x)`` on ``[-hi, -lo]``."""
    sign = np.where(np.arange(s.coeffs.size) % 2 == 0, 1.0, -1.0)
    return LegendreSeries(Interval(-s.interval.hi, -s.interval.lo), s.coeffs * sign)


# -- JSON series format ---------------------------------------------------------


def series_to_dict(s: LegendreSeries) -> dict:
    d = {
        "interval": [s.interval.lo, s.interval.hi],
        "coeffs_re": [float(v) for v in s.coeffs.real],
    }
    if s.is_complex:
        d["coeffs_im"] = [float(v) for v in s.coeffs.imag]
    return d


def series_from_dict(d: dict) -> LegendreSeries:
    try:
        lo, hi = d["interval"]
        re = np.asarray(d["coeffs_re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed series description: {exc}") from exc
    if "coeffs_im" in d:
        im = np.asarray(d["coeffs_im"], dtype=float)
        if im.shape != re.shape:
            raise ValueError("coeffs_re and coeffs_im differ in length")
        coeffs = re + 1j * im
    else:
        coeffs = re
    return LegendreSeries(Interval(lo, hi), coeffs)


def save_series(s: LegendreSeries, path) -> None:
    Path(path).write_text(json.dumps(series_to_dict(s)))


def load_series(path) -> LegendreSeries:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return series_from_dict(d)
