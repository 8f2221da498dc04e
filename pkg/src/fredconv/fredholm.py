"""Coefficient-space matrix of the Fredholm convolution operator.

For a kernel ``f`` on ``[-(r+1), r+1]`` with Legendre coefficients ``a`` (in
``P_m(x/(r+1))``) the operator ``g -> int_{-1}^{1} f(x-t) g(t) dt`` maps the
coefficients ``b`` of ``g`` (in ``P_n(t)``) to the coefficients ``c = R b`` of
the result in ``P_m(x/r)`` on ``[-r, r]``. ``R`` is skew upper triangular and
its entries satisfy four equivalent four-term recurrences; the stable build
seeds two boundary columns (``r >= 1``) or rows (``r < 1``) and recurses each
entry in the direction that does not amplify rounding errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .exceptions import IntervalError
from .legendre import Interval, LegendreSeries

__all__ = [
    "WMatrix",
    "FredholmMatrix",
    "build_w_matrix",
    "zeroth_column",
    "first_column",
    "zeroth_and_first_rows",
    "recurrence_step",
    "convolution_matrix",
    "build_fredholm_matrix",
    "build_fredholm_matrix_naive",
    "fredholm_conv",
    "kernel_ratio",
]


@dataclass(frozen=True)
class WMatrix:
    """Coefficients of ``P_j`` differences re-expanded in a shifted basis.

    ``plain``:  P_j((x+1)/(r+1)) - P_j((x-1)/(r+1)) = sum_k w[k, j] P_k(x/r)
    ``hatted``: P_j((r-t)/(r+1)) - P_j(-(r+t)/(r+1)) = sum_k w[k, j] P_k(t)

    ``entries`` has shape (L+1, L+2) and is strictly upper triangular.
    """

    entries: np.ndarray
    r: float
    variant: str

    @property
    def L(self) -> int:
        return self.entries.shape[0] - 1

    def section(self, L: int) -> np.ndarray:
        """The leading (L+1) x (L+2) block, i.e. W_L."""
        return self.entries[: L + 1, : L + 2]


@dataclass(frozen=True)
class FredholmMatrix:
    """Convolution matrix of declared ``shape`` with its interval ratio ``r``.

    Only the leading ``core`` block can be nonzero; everything outside it is
    an exact zero, so the dense ``entries`` array is materialised on demand.
    """

    core: np.ndarray
    r: float
    kernel_degree: int
    shape: tuple = None

    def __post_init__(self):
        if self.shape is None:
            object.__setattr__(self, "shape", tuple(self.core.shape))
        if self.core.shape[0] > self.shape[0] or self.core.shape[1] > self.shape[1]:
            raise ValueError("core block does not fit in the declared shape")

    @cached_property
    def entries(self) -> np.ndarray:
        if self.core.shape == self.shape:
            return self.core
        out = np.zeros(self.shape, dtype=self.core.dtype)
        out[: self.core.shape[0], : self.core.shape[1]] = self.core
        out.flags.writeable = False
        return out

    def apply(self, b) -> np.ndarray:
        """``c = R b`` with ``b`` zero-padded or truncated to the column count."""
        b = np.asarray(b)
        k = min(b.size, self.core.shape[1], self.shape[1])
        dtype = np.result_type(self.core.dtype, b.dtype)
        out = np.zeros(self.shape[0], dtype=dtype)
        out[: self.core.shape[0]] = self.core[:, :k] @ b[:k]
        return out

    def __matmul__(self, b):
        return self.apply(b)


def _w_seeds(r: float, hatted: bool) -> dict:
    rp1 = r + 1.0
    if hatted:
        return {
            (0, 1): 2 * r / rp1,
            (1, 2): -6 * r / rp1**2,
            (0, 3): r * (2 * r * r - 6 * r + 2) / rp1**3,
            (2, 3): 10 * r / rp1**3,
        }
    return {
        (0, 1): 2 / rp1,
        (1, 2): 6 * r / rp1**2,
        (0, 3): (2 * r * r - 6 * r + 2) / rp1**3,
        (2, 3): 10 * r * r / rp1**3,
    }


def build_w_matrix(L: int, r: float, variant: str = "plain") -> WMatrix:
    """W_L (``variant="plain"``) or W-hat_L (``variant="hatted"``).

    Columns 0-3 come from closed forms; the rest from the 9-term recurrence.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    if not r > 0:
        raise ValueError("r must be positive")
    if variant not in ("plain", "hatted"):
        raise ValueError(f"unknown W variant {variant!r}")
    entries = _build_w(L, float(r), variant == "hatted")[: L + 1]
    entries.flags.writeable = False
    return WMatrix(entries, float(r), variant)


def _build_w(L: int, r: float, hatted: bool) -> np.ndarray:
    # zero-padded work array; rows L+1.. are padding read by the recurrence
    W = np.zeros((L + 5, L + 2))
    for (k, j), value in _w_seeds(r, hatted).items():
        if j < L + 2:
            W[k, j] = value
    _kernels.fill_w_columns(W, r, hatted)
    return W


def _as_coeffs(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("kernel coefficients must be a non-empty 1-D array")
    return a.astype(np.complex128 if np.iscomplexobj(a) else np.float64)


def _w_for(M: int, r: float, variant: str, W: WMatrix | None) -> WMatrix:
    if W is None or W.L < M + 1 or W.r != r or W.variant != variant:
        W = build_w_matrix(M + 1, r, variant)
    return W


def zeroth_column(a, r: float, W: WMatrix | None = None) -> np.ndarray:
    """Coefficients of ``int_{-1}^{1} f(x-t) dt`` in ``P_m(x/r)``; length M+1."""
    a = _as_coeffs(a)
    W = _w_for(a.size - 1, r, "plain", W)
    return _kernels.seed_columns(a, W.entries, float(r))[0]


def first_column(a, r: float, W: WMatrix | None = None) -> np.ndarray:
    """Coefficients of ``int_{-1}^{1} f(x-t) t dt``; length M+2, last two entries ~0."""
    a = _as_coeffs(a)
    W = _w_for(a.size - 1, r, "plain", W)
    return _kernels.seed_columns(a, W.entries, float(r))[1]


def zeroth_and_first_rows(a, r: float, W: WMatrix | None = None):
    """Rows 0 and 1 of R, each of length M+1."""
    a = _as_coeffs(a)
    W = _w_for(a.size - 1, r, "hatted", W)
    return _kernels.seed_rows(a, W.entries, float(r))


def recurrence_step(direction: str, neighbors, m: int, n: int, r: float):
    """Solve the four-term identity for one entry of R.

    ``neighbors`` holds the three known entries, in this order:

    =========== ================================ ============
    direction   neighbors                        returns
    =========== ================================ ============
    rightward   R[m,n-1], R[m-1,n], R[m+1,n]     R[m,n+1]
    downward    R[m-1,n], R[m,n+1], R[m,n-1]     R[m+1,n]
    leftward    R[m,n+1], R[m-1,n], R[m+1,n]     R[m,n-1]
    upward      R[m+1,n], R[m,n+1], R[m,n-1]     R[m-1,n]
    =========== ================================ ============
    """
    if m < 1 or n < 1:
        raise ValueError("the four-term identity needs m, n >= 1")
    p, q, s = neighbors
    if direction == "rightward":
        return p + r * (2 * n + 1) * (q / (2 * m - 1) - s / (2 * m + 3))
    if direction == "downward":
        return (2 * m + 3) / (2 * m - 1) * p - (2 * m + 3) / (r * (2 * n + 1)) * (q - s)
    if direction == "leftward":
        return p - r * (2 * n + 1) * (q / (2 * m - 1) - s / (2 * m + 3))
    if direction == "upward":
        return (2 * m - 1) / (2 * m + 3) * p + (2 * m - 1) / (r * (2 * n + 1)) * (q - s)
    raise ValueError(f"unknown direction {direction!r}")


def _finish(R: np.ndarray, M: int, N: int, rows: int, r: float) -> FredholmMatrix:
    # entries with m + n > M are exactly zero by construction, not by rounding
    _kernels.zero_below_antidiagonal(R, M)
    k = min(M, N) + 1
    core = R[: M + 1, :k]
    core.flags.writeable = False
    return FredholmMatrix(core, float(r), M, (rows + 1, N + 1))


def convolution_matrix(
    a,
    r: float,
    N: int | None = None,
    naive: bool = False,
    M: int | None = None,
) -> FredholmMatrix:
    """Build R from kernel coefficients ``a`` and interval ratio ``r``.

    The result has ``M + 1`` rows and ``N + 1`` columns. ``M`` defaults to the
    kernel degree ``len(a) - 1``; a larger ``M`` pads with exact zero rows and
    ``N`` (default ``M``) beyond the kernel degree gives exact zero columns.
    With ``naive=True`` the rightward recurrence is run over the whole
    triangle, which is unstable; ``r >= 1`` only.
    """
    a = _as_coeffs(a)
    r = float(r)
    if not r > 0:
        raise IntervalError("interval ratio r must be positive")
    deg = a.size - 1
    rows = deg if M is None else int(M)
    if rows < deg:
        raise ValueError(f"row count M={rows} is below the kernel degree {deg}")
    N = rows if N is None else int(N)
    if N < 0:
        raise ValueError("N must be non-negative")
    M = deg
    R = np.zeros((M + 3, M + 3), dtype=a.dtype)
    if naive and r < 1:
        raise ValueError("the naive rightward build is defined for r >= 1")
    if r >= 1:
        W = _build_w(M + 1, r, False)
        col0, col1 = _kernels.seed_columns(a, W, r)
        R[: M + 1, 0] = col0
        R[: M + 1, 1] = col1[: M + 1]
        if naive:
            R[0, : M + 1] = _kernels.seed_rows(a, _build_w(M + 1, r, True), r)[0]
            _kernels.sweep_columns_naive(R, M, r)
        else:
            _kernels.sweep_columns_then_rows(R, M, r)
    else:
        row0, row1 = _kernels.seed_rows(a, _build_w(M + 1, r, True), r)
        R[0, : M + 1] = row0
        R[1, : M + 1] = row1
        _kernels.sweep_rows_then_columns(R, M, r)
    return _finish(R, M, N, rows, r)


def kernel_ratio(f: LegendreSeries) -> float:
    """r for a kernel given on ``[-(r+1), r+1]``."""
    lo, hi = f.interval
    if abs(lo + hi) > 1e-12 * (hi - lo):
        raise IntervalError(f"kernel interval {f.interval} is not symmetric about 0")
    r = hi - 1.0
    if not r > 0:
        raise IntervalError("kernel interval must be longer than [-1, 1]")
    return r


def build_fredholm_matrix(
    f: LegendreSeries, N: int | None = None, M: int | None = None
) -> FredholmMatrix:
    """Stable construction of R for a kernel on ``[-(r+1), r+1]``.

    See :func:`convolution_matrix` for the meaning of ``N`` and ``M``.
    """
    return convolution_matrix(f.coeffs, kernel_ratio(f), N, M=M)


def build_fredholm_matrix_naive(
    f: LegendreSeries, N: int | None = None, M: int | None = None
) -> FredholmMatrix:
    """Rightward-only construction; reproduces the error blow-up. Not for real use."""
    return convolution_matrix(f.coeffs, kernel_ratio(f), N, naive=True, M=M)


def fredholm_conv(f: LegendreSeries, g: LegendreSeries) -> LegendreSeries:
    """``h(x) = int f(x-t) g(t) dt`` over the shorter function's interval.

    The factor on the longer interval acts as the kernel, so argument order
    does not matter. The result lives on ``[a+d, b+c]`` where ``[a, b]`` is
    the kernel interval and ``[c, d]`` the other one.

    Raises:
        IntervalError: if both intervals have the same length.
    """
    if f.interval.length < g.interval.length:
        f, g = g, f
    (a, b), (c, d) = f.interval, g.interval
    r = (b - a) / (d - c) - 1.0
    if r <= 1e-14:
        raise IntervalError("Fredholm convolution needs intervals of different lengths")
    R = convolution_matrix(f.coeffs, r, g.degree)
    coeffs = 0.5 * (d - c) * R.apply(g.coeffs)
    return LegendreSeries(Interval(a + d, b + c), coeffs)
