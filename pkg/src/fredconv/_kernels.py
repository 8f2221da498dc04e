"""Compiled inner loops for the W-matrix and convolution-matrix recurrences.

All routines work in place on preallocated, zero-padded arrays so that
out-of-range neighbours read as exact zeros.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def fill_w_columns(W, r, hatted):
    """Fill columns 4.. of a seeded W (or W-hat) by the 9-term recurrence.

    ``W`` has shape (L+5, L+2): rows beyond L+1 are zero padding.
    """
    ncols = W.shape[1]
    rp1 = r + 1.0
    if hatted:
        t = -1.0
        rho2 = r * r
    else:
        t = r
        rho2 = 1.0
    t2 = t * t
    # k-dependent factors of the x- and x^2-multiplication stencils
    nk = ncols + 1
    vm = np.empty(nk)
    vp = np.empty(nk)
    sm = np.empty(nk)
    s0 = np.empty(nk)
    sp = np.empty(nk)
    for k in range(nk):
        vm[k] = k / (2 * k - 1)
        vp[k] = (k + 1) / (2 * k + 3)
        sm[k] = k * (k - 1) / ((2 * k - 3) * (2 * k - 1))
        s0[k] = (2 * k * k + 2 * k - 1) / ((2 * k - 1) * (2 * k + 3))
        sp[k] = (k + 1) * (k + 2) / ((2 * k + 5) * (2 * k + 3))
    for j in range(2, ncols - 2):
        A = (2 * j + 3) / ((j + 2) * rp1)
        q = (2 * j + 1) / ((j + 1) * rp1)
        f2 = -rp1 * (j + 1) / (2 * j + 3) - rp1 * j * j / ((j + 1) * (2 * j - 1))
        b = 2.0 * t * A
        h = 2.0 * j / (j + 1) * t * A
        e = -q * t2 * A
        f = A * (q * rho2 + f2)
        K = -A * j * (j - 1) * rp1 / ((j + 1) * (2 * j - 1))
        jj = j + 2
        # column jj is nonzero only for k < jj with k + jj odd
        k0 = (jj + 1) % 2
        for k in range(k0, jj, 2):
            acc = (
                b * vp[k] * W[k + 1, j + 1]
                + (f + e * s0[k]) * W[k, j]
                + e * sp[k] * W[k + 2, j]
                + h * vp[k] * W[k + 1, j - 1]
                + K * W[k, j - 2]
            )
            if k >= 1:
                acc += b * vm[k] * W[k - 1, j + 1] + h * vm[k] * W[k - 1, j - 1]
            if k >= 2:
                acc += e * sm[k] * W[k - 2, j]
            W[k, jj] = acc


@numba.njit(cache=True)
def integrate(a):
    """U a: coefficients of the antiderivative vanishing at -1 (length +1)."""
    n = a.size
    out = np.zeros(n + 1, dtype=a.dtype)
    for k in range(n):
        s = a[k] / (2 * k + 1)
        out[k + 1] += s
        if k >= 1:
            out[k - 1] -= s
    return out


@numba.njit(cache=True)
def times_x(a):
    """V a: coefficients of x times the series (length +1)."""
    n = a.size
    out = np.zeros(n + 1, dtype=a.dtype)
    for k in range(n):
        out[k + 1] += a[k] * ((k + 1) / (2 * k + 1))
        if k >= 1:
            out[k - 1] += a[k] * (k / (2 * k + 1))
    return out


@numba.njit(cache=True)
def w_apply(W, x, nrows):
    """First ``nrows`` entries of W @ x, using only the first x.size columns."""
    out = np.zeros(nrows, dtype=x.dtype)
    for k in range(nrows):
        acc = out[k] * 0
        # W is strictly upper triangular with a checkerboard of zeros
        for j in range(k + 1, x.size, 2):
            acc += W[k, j] * x[j]
        out[k] = acc
    return out


@numba.njit(cache=True)
def seed_columns(a, W, r):
    """Columns 0 and 1 of R (lengths M+1 and M+2) from plain W of order >= M+1."""
    M = a.size - 1
    base = w_apply(W, integrate(a), M + 1)
    col0 = (r + 1) * base
    shifted = w_apply(W, integrate(times_x(a)), M + 2)
    col1 = r * (r + 1) * times_x(base) - (r + 1) ** 2 * shifted
    return col0, col1


@numba.njit(cache=True)
def seed_rows(a, W, r):
    """Rows 0 and 1 of R (length M+1) from hatted W of order >= M+1."""
    M = a.size - 1
    base = w_apply(W, integrate(a), M + 1)
    inner = (r + 1) * w_apply(W, integrate(times_x(a)), M + 2) + times_x(base)
    row0 = np.empty(M + 1, dtype=base.dtype)
    row1 = np.empty(M + 1, dtype=base.dtype)
    c0 = (r + 1) / r
    c1 = 3 * (r + 1) / (r * r)
    for m in range(M + 1):
        row0[m] = c0 * base[m] / (2 * m + 1)
        row1[m] = c1 * inner[m] / (2 * m + 1)
    return row0, row1


@numba.njit(cache=True)
def sweep_columns_then_rows(R, M, r):
    """r >= 1: rightward in S1 (m >= r n), then upward in S23 (m < r n).

    Columns 0 and 1 must be seeded. ``R`` is padded to at least (M+3, M+3).
    """
    for n1 in range(2, M + 1):
        n = n1 - 1
        c = r * (2 * n + 1)
        for m in range(1, M - n1 + 1):
            if m >= r * n1:
                R[m, n1] = R[m, n - 1] + c * (
                    R[m - 1, n] / (2 * m - 1) - R[m + 1, n] / (2 * m + 3)
                )
    for p in range(M - 2, -1, -1):
        a = (2 * p + 1) / (2 * p + 5)
        for n in range(2, M - p + 1):
            if p < r * n:
                R[p, n] = a * R[p + 2, n] + (2 * p + 1) / (r * (2 * n + 1)) * (
                    R[p + 1, n + 1] - R[p + 1, n - 1]
                )


@numba.njit(cache=True)
def sweep_rows_then_columns(R, M, r):
    """r < 1: downward in S3-hat (m < r n), then leftward in S12-hat (m >= r n).

    Rows 0 and 1 must be seeded. ``R`` is padded to at least (M+3, M+3).
    """
    for m1 in range(2, M + 1):
        m = m1 - 1
        a = (2 * m1 + 1) / (2 * m1 - 3)
        for n in range(1, M - m1 + 1):
            if m1 < r * n:
                R[m1, n] = a * R[m - 1, n] - (2 * m1 + 1) / (r * (2 * n + 1)) * (
                    R[m, n + 1] - R[m, n - 1]
                )
    for col in range(M - 2, -1, -1):
        c = r * (2 * col + 3)
        for m in range(2, M - col + 1):
            if m >= r * col:
                R[m, col] = R[m, col + 2] - c * (
                    R[m - 1, col + 1] / (2 * m - 1) - R[m + 1, col + 1] / (2 * m + 3)
                )


@numba.njit(cache=True)
def sweep_columns_naive(R, M, r):
    """Rightward recursion over the whole triangle, ignoring stability.

    Columns 0, 1 and row 0 must be seeded.
    """
    for n1 in range(2, M + 1):
        n = n1 - 1
        c = r * (2 * n + 1)
        for m in range(1, M - n1 + 1):
            R[m, n1] = R[m, n - 1] + c * (
                R[m - 1, n] / (2 * m - 1) - R[m + 1, n] / (2 * m + 3)
            )


@numba.njit(cache=True)
def zero_below_antidiagonal(R, M):
    """Set R[m, n] = 0 for m + n > M within the leading (M+1) x (M+1) block."""
    for m in range(M + 1):
        for n in range(M - m + 1, M + 1):
            R[m, n] = 0


def warmup():
    """Trigger compilation of every kernel for real and complex data."""
    W = np.zeros((10, 7))
    W[0, 1] = 1.0
    fill_w_columns(W, 2.0, False)
    fill_w_columns(W, 0.5, True)
    for dtype in (np.float64, np.complex128):
        a = np.ones(4, dtype=dtype)
        seed_columns(a, W, 2.0)
        seed_rows(a, W, 0.5)
        R = np.zeros((8, 8), dtype=dtype)
        sweep_columns_then_rows(R, 4, 2.0)
        sweep_rows_then_columns(R, 4, 0.5)
        sweep_columns_naive(R, 4, 2.0)
        zero_below_antidiagonal(R, 4)
