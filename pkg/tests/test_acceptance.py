"""End-to-end acceptance checks; one PASS/FAIL line per criterion is printed in the summary.

Run on its own with ``python3 tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py``.
"""

import time

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES, random_kernel
from test_fredholm import stencil_residuals

from fredconv.bench import scaling_checks
from fredconv.builtins import (
    huygens_fresnel_kernel,
    love_equation,
    weierstrass_pair,
)
from fredconv.fredholm import build_fredholm_matrix, build_fredholm_matrix_naive, fredholm_conv
from fredconv.legendre import LegendreSeries, approximate, interpolate
from fredconv.oracle import (
    cancellation_demo,
    fredholm_integral,
    oracle_fredholm_matrix,
    volterra_fredholm_matrix,
)
from fredconv.solver import solve_second_kind
from fredconv.spectra import eigenvalues, operator_section, pseudospectrum_certificate


def record(number, passed, detail):
    ACCEPTANCE_LINES.append((number, bool(passed), detail))
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
    return bool(passed)


def in_triangle(shape, M):
    m, n = np.indices(shape)
    return m + n <= M


@pytest.fixture(scope="module")
def ones39():
    return LegendreSeries((-3.0, 3.0), np.ones(40))


@pytest.fixture(scope="module")
def ones39_oracle(ones39):
    return oracle_fredholm_matrix(ones39).entries


def test_criterion_1_stable_accuracy(ones39, ones39_oracle):
    t0 = time.perf_counter()
    R = build_fredholm_matrix(ones39).entries
    elapsed = time.perf_counter() - t0
    rel = np.max(np.abs(R - ones39_oracle)) / np.max(np.abs(ones39_oracle))
    ok = rel <= 1e-12 and elapsed < 1.0
    assert record(1, ok, f"relative error {rel:.2e} (<= 1e-12), build {elapsed * 1e3:.2f} ms (< 1 s)")


def test_criterion_2_naive_instability(ones39, ones39_oracle):
    R = build_fredholm_matrix_naive(ones39).entries
    err = np.abs(R - ones39_oracle)
    worst = np.unravel_index(np.argmax(err), err.shape)
    ok = err.max() >= 1e6 and err[1, 37] >= 1e10
    assert record(
        2, ok,
        f"max error {err.max():.3e} at {tuple(int(i) for i in worst)} (>= 1e6), "
        f"error at (1,37) {err[1, 37]:.3e} (>= 1e10)",
    )


def test_criterion_3_exact_zeros(rng):
    checked = 0
    ok = True
    for r in (1 / 3, 0.5, 1.0, 2.0, 5.0, 100.0):
        for degree in (0, 1, 2, 7, 20, 40):
            for cplx in (False, True):
                f = random_kernel(rng, degree, r, complex_=cplx)
                for N in (degree, degree + 5, 3 * degree + 2):
                    R = build_fredholm_matrix(f, N=N, M=degree + 3).entries
                    below = ~in_triangle(R.shape, degree)
                    ok &= bool(np.all(R[below] == 0))
                    ok &= bool(np.all(R[:, degree + 1 :] == 0))
                    checked += 1
    assert record(3, ok, f"{checked} builds: every entry with m+n > M and every column n > M is exactly 0")


def test_criterion_4_recurrence_residuals(rng):
    worst = 0.0
    for r in (1 / 3, 0.5, 1.0, 2.0, 5.0):
        for degree in (10, 25, 40):
            R = build_fredholm_matrix(random_kernel(rng, degree, r)).entries
            res = stencil_residuals(R, r)
            worst = max(worst, max(res.values()) / np.max(np.abs(R)))
    assert record(4, worst <= 1e-10, f"worst relative stencil residual {worst:.2e} (<= 1e-10), 4 directions")


def test_criterion_5_volterra_relation():
    f = interpolate(np.exp, (-2.0, 2.0), 17)
    M = f.degree
    R_hat = volterra_fredholm_matrix(f)
    R = build_fredholm_matrix(f).entries
    inside = in_triangle(R.shape, M)
    in_err = np.max(np.abs(R_hat[: M + 1][inside] - R[inside]))
    grids = cancellation_demo(f)
    # compare on the block both matrices share; R is exactly zero there off the triangle
    block = grids.volterra[: M + 1]
    outside_hat = block[~inside]
    outside_R = grids.stable[~inside]
    full_out = grids.volterra[~in_triangle(grids.volterra.shape, M)]
    ok = in_err <= 1e-11 and np.all(outside_hat > 0) and np.all(outside_R == 0)
    assert record(
        5, ok,
        f"in-triangle |R_hat - R| {in_err:.2e} (<= 1e-11); off the triangle R_hat in "
        f"[{outside_hat.min():.1e}, {outside_hat.max():.1e}] on the shared block "
        f"({np.count_nonzero(full_out)}/{full_out.size} nonzero overall), "
        f"R exactly 0: {bool(np.all(outside_R == 0))}",
    )


def test_criterion_6_love():
    t0 = time.perf_counter()
    y = solve_second_kind(love_equation(-1.0), tol=1e-14)
    elapsed = time.perf_counter() - t0
    t = np.linspace(0.0, 5.0, 200)
    err = np.max(np.abs(y(t) - 1.0))
    ok = err <= 1e-12 and elapsed < 5.0
    assert record(6, ok, f"max |y - 1| {err:.2e} (<= 1e-12) at degree {y.degree}, {elapsed:.3f} s (< 5 s)")


def test_criterion_7_weierstrass():
    t0 = time.perf_counter()
    f, g = weierstrass_pair(2000, 65)
    h = fredholm_conv(f, g)
    x = np.linspace(h.interval.lo, h.interval.hi, 100)
    ref = fredholm_integral(f, g, x, g.interval, 1200)
    elapsed = time.perf_counter() - t0
    err = np.max(np.abs(h(x) - ref))
    ok = err <= 1e-10 and elapsed < 30.0
    assert record(7, ok, f"max |h - quadrature| {err:.2e} (<= 1e-10) at 100 points, {elapsed:.2f} s (< 30 s)")


@pytest.mark.timing
def test_criterion_8_scaling():
    checks = scaling_checks(M=400, repeats=15)
    detail = "; ".join(f"{c.name}: {c.ratio:.2f} in [{c.lo}, {c.hi}]" for c in checks)
    assert record(8, all(c.passed for c in checks), detail)


def test_criterion_9_spectra():
    lam1 = eigenvalues(operator_section(LegendreSeries((-2, 2), [1.0]), M=10))
    ones_ok = abs(lam1[0] - 2.0) <= 1e-14 and np.all(lam1[1:] == 0)
    lamx = eigenvalues(operator_section(LegendreSeries((-2, 2), [0.0, 2.0]), M=10))
    pair = np.sort_complex(lamx[:2])
    x_err = np.max(np.abs(pair - np.array([-2j, 2j]) / np.sqrt(3)))
    hf = approximate(huygens_fresnel_kernel(64 * np.pi), (-2.0, 2.0), tol=1e-14)
    probes = np.concatenate(
        [0.5 * np.exp(2j * np.pi * np.arange(5) / 5), np.exp(1j * np.pi * (2 * np.arange(5) + 1) / 5)]
    )
    cert = pseudospectrum_certificate(hf, 600, probes, delta=50, threshold=0.01)
    ok = ones_ok and x_err <= 1e-10 and cert.passed
    assert record(
        9, ok,
        f"f=1 spectrum {{2, 0, ...}}: {ones_ok}; f=x error {x_err:.1e} (<= 1e-10); "
        f"HF sigma_min change M=600 vs 650 at 10 probes {cert.max_change:.1e} (<= 1e-2)",
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
