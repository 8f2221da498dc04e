"""Eigenvalues and pseudospectra of convolution operators on L2([-1, 1]).

The operator ``u -> int_{-1}^{1} f(x-t) u(t) dt`` with ``f`` on [-2, 2] maps
[-1, 1] to itself (r = 1). Finite sections of its convolution matrix are taken
in orthonormal Legendre coordinates so that singular values measure the L2
norm; every reported quantity can be checked against a larger section.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .exceptions import ConvergenceError, IntervalError
from .fredholm import convolution_matrix, kernel_ratio
from .legendre import LegendreSeries

__all__ = [
    "OperatorSection",
    "PseudospectrumGrid",
    "Certificate",
    "operator_section",
    "eigenvalues",
    "sigma_min",
    "pseudospectra",
    "complex_grid",
    "eigenvalue_certificate",
    "pseudospectrum_certificate",
]


@dataclass(frozen=True)
class OperatorSection:
    """Square section A = E R E^-1 with E = diag(sqrt(2/(2n+1)))."""

    matrix: np.ndarray
    kernel: LegendreSeries

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def legendre_matrix(self) -> np.ndarray:
        """The same section in Legendre coefficients, i.e. R itself."""
        e = _scaling(self.size - 1)
        return self.matrix / e[:, None] * e[None, :]


def _scaling(M: int) -> np.ndarray:
    return np.sqrt(2.0 / (2 * np.arange(M + 1) + 1))


def operator_section(f: LegendreSeries, M: int | None = None) -> OperatorSection:
    """(M+1) x (M+1) section of the convolution operator with kernel ``f`` on [-2, 2].

    ``M`` defaults to the kernel degree. Smaller ``M`` gives the Galerkin
    truncation (leading block of R); larger ``M`` pads with exact zeros.

    Raises:
        IntervalError: if ``f`` does not live on [-2, 2].
    """
    r = kernel_ratio(f)
    if abs(r - 1.0) > 1e-12:
        raise IntervalError(f"operator sections need r = 1, got r = {r:g}")
    M = f.degree if M is None else int(M)
    if M < 0:
        raise ValueError("M must be non-negative")
    R = convolution_matrix(f.coeffs, 1.0, N=M, M=max(M, f.degree)).entries[: M + 1]
    e = _scaling(M)
    A = e[:, None] * R / e[None, :]
    A.flags.writeable = False
    return OperatorSection(A, f)


def eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a section (or square matrix), by descending magnitude.

    Raises:
        ConvergenceError: if the QR iteration fails.
    """
    mat = A.matrix if isinstance(A, OperatorSection) else np.asarray(A)
    try:
        lam = linalg.eigvals(mat)
    except linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    if not np.all(np.isfinite(lam)):
        raise ConvergenceError("eigenvalue iteration produced non-finite values")
    return lam[np.argsort(-np.abs(lam), kind="stable")]


class PseudospectrumGrid(NamedTuple):
    """sigma_min(zI - A) on a grid of points ``z`` (any shape)."""

    z: np.ndarray
    sigma_min: np.ndarray
    eps_levels: np.ndarray


def _triangular_sigma_min(T: np.ndarray, z: complex, tol: float) -> float:
    # smallest singular value of zI - T via Lanczos on ((zI-T)^H (zI-T))^{-1}
    n = T.shape[0]
    B = z * np.eye(n) - T

    def apply_inverse(v):
        w = linalg.solve_triangular(B, v, trans="C")
        return linalg.solve_triangular(B, w)

    if np.any(np.diag(B) == 0):
        return 0.0
    op = LinearOperator((n, n), matvec=apply_inverse, dtype=np.complex128)
    v0 = np.ones(n, dtype=np.complex128)
    try:
        lam = eigsh(op, k=1, which="LM", tol=tol, v0=v0, return_eigenvectors=False)[0]
    except ArpackNoConvergence:
        return float(linalg.svdvals(B)[-1])
    if not np.isfinite(lam) or lam <= 0:
        return float(linalg.svdvals(B)[-1])
    return float(1.0 / np.sqrt(lam))


def sigma_min(A, z, method: str = "auto", tol: float = 1e-10) -> np.ndarray:
    """Smallest singular value of ``zI - A`` at each point of ``z``.

    ``method`` is ``"svd"`` (dense SVD per point), ``"lanczos"`` (inverse
    Lanczos on the Schur form) or ``"auto"`` (SVD up to size 200).
    """
    mat = A.matrix if isinstance(A, OperatorSection) else np.asarray(A)
    n = mat.shape[0]
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape)
    if method == "auto":
        method = "svd" if n <= 200 else "lanczos"
    if method == "svd":
        eye = np.eye(n)
        for idx, zi in np.ndenumerate(z):
            out[idx] = linalg.svdvals(zi * eye - mat)[-1]
    elif method == "lanczos":
        T, _ = linalg.schur(mat.astype(complex), output="complex")
        for idx, zi in np.ndenumerate(z):
            out[idx] = _triangular_sigma_min(T, zi, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out


def complex_grid(re_range, im_range, shape) -> np.ndarray:
    """Rectangular grid of complex points, ``shape = (n_im, n_re)``."""
    n_im, n_re = shape
    if n_im < 1 or n_re < 1:
        raise ValueError("grid must contain at least one point")
    re = np.linspace(*re_range, n_re)
    im = np.linspace(*im_range, n_im)
    return re[None, :] + 1j * im[:, None]


def pseudospectra(
    A,
    z,
    eps_levels: Sequence[float] = tuple(10.0 ** -np.arange(1, 3.01, 0.5)),
    method: str = "auto",
) -> PseudospectrumGrid:
    """sigma_min(zI - A) at the points ``z``; the eps-pseudospectrum is {sigma_min < eps}."""
    z = np.asarray(z, dtype=complex)
    if z.size == 0:
        raise ValueError("grid is empty")
    return PseudospectrumGrid(z, sigma_min(A, z, method), np.asarray(eps_levels, dtype=float))


class Certificate(NamedTuple):
    """Outcome of comparing a quantity between sections of size M and M + delta."""

    M: int
    delta: int
    max_change: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_change <= self.threshold


def eigenvalue_certificate(
    f: LegendreSeries, M: int, count: int = 30, delta: int = 50, threshold: float = 1e-6
) -> Certificate:
    """Distance from each of the ``count`` largest eigenvalues at M to the spectrum at M + delta."""
    small = eigenvalues(operator_section(f, M))[:count]
    big = eigenvalues(operator_section(f, M + delta))
    change = max(float(np.min(np.abs(big - lam))) for lam in small)
    return Certificate(M, delta, change, threshold)


def pseudospectrum_certificate(
    f: LegendreSeries, M: int, z, delta: int = 50, threshold: float = 0.01
) -> Certificate:
    """Largest relative change of sigma_min at the probes ``z`` from M to M + delta."""
    z = np.asarray(z, dtype=complex)
    s1 = sigma_min(operator_section(f, M), z)
    s2 = sigma_min(operator_section(f, M + delta), z)
    change = float(np.max(np.abs(s1 - s2) / s2))
    return Certificate(M, delta, change, threshold)
