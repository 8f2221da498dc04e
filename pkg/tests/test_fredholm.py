import numpy as np
import pytest
from conftest import random_kernel
from hypothesis import given
from hypothesis import strategies as st

from fredconv.exceptions import IntervalError
from fredconv.fredholm import (
    FredholmMatrix,
    build_fredholm_matrix,
    build_fredholm_matrix_naive,
    build_w_matrix,
    convolution_matrix,
    first_column,
    fredholm_conv,
    kernel_ratio,
    recurrence_step,
    zeroth_and_first_rows,
    zeroth_column,
)
from fredconv.legendre import Interval, LegendreSeries, gauss_legendre_rule
from fredconv.oracle import fredholm_integral, oracle_fredholm_matrix, oracle_w_matrix

RATIOS = [1 / 3, 0.5, 1.0, 2.0, 5.0]
DIRECTIONS = {
    # direction: (neighbour offsets, target offset) relative to the stencil centre (m, n)
    "rightward": ([(0, -1), (-1, 0), (1, 0)], (0, 1)),
    "downward": ([(-1, 0), (0, 1), (0, -1)], (1, 0)),
    "leftward": ([(0, 1), (-1, 0), (1, 0)], (0, -1)),
    "upward": ([(1, 0), (0, 1), (0, -1)], (-1, 0)),
}


def stencil_residuals(R, r):
    """Largest |recurrence_step - stored entry| over interior stencils, per direction."""
    M = R.shape[0] - 1
    out = {}
    for name, (nbrs, target) in DIRECTIONS.items():
        worst = 0.0
        for m in range(1, M):
            for n in range(1, M):
                vals = tuple(R[m + dm, n + dn] for dm, dn in nbrs)
                pred = recurrence_step(name, vals, m, n, r)
                worst = max(worst, abs(pred - R[m + target[0], n + target[1]]))
        out[name] = worst
    return out


class TestWMatrix:
    def test_plain_corner_r1(self):
        W = build_w_matrix(4, 1.0, "plain").entries
        expected = [[0, 1, 0, -1 / 4], [0, 0, 3 / 2, 0], [0, 0, 0, 5 / 4]]
        assert np.allclose(W[:3, :4], expected, atol=1e-15)

    def test_hatted_corner_r1(self):
        W = build_w_matrix(4, 1.0, "hatted").entries
        expected = [[0, 1, 0, -1 / 4], [0, 0, -3 / 2, 0], [0, 0, 0, 5 / 4]]
        assert np.allclose(W[:3, :4], expected, atol=1e-15)

    def test_plain_r2_column5_against_projection(self):
        W = build_w_matrix(8, 2.0).entries
        rule = gauss_legendre_rule(10)
        x = 2.0 * rule.nodes
        from numpy.polynomial import legendre as npleg

        p5 = lambda u: npleg.legval(u, [0, 0, 0, 0, 0, 1])
        diff = p5((x + 1) / 3) - p5((x - 1) / 3)
        proj = npleg.legvander(rule.nodes, 8).T @ (rule.weights * diff) * (np.arange(9) + 0.5)
        assert np.allclose(W[:, 5], proj, atol=1e-14)

    @pytest.mark.parametrize("variant", ["plain", "hatted"])
    @pytest.mark.parametrize("r", [1 / 3, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0])
    def test_against_oracle_to_L200(self, variant, r):
        W = build_w_matrix(200, r, variant).entries
        O = oracle_w_matrix(200, r, variant)
        assert np.max(np.abs(W - O)) <= 1e-12 * np.max(np.abs(O))

    @pytest.mark.parametrize("variant", ["plain", "hatted"])
    def test_parity_and_strict_triangularity_exact(self, variant):
        W = build_w_matrix(60, 2.5, variant).entries
        k, j = np.indices(W.shape)
        assert np.all(W[(k >= j) | ((k + j) % 2 == 0)] == 0.0)

    def test_section(self):
        W = build_w_matrix(10, 2.0)
        assert W.L == 10 and W.section(4).shape == (5, 6)
        assert np.array_equal(W.section(4), build_w_matrix(4, 2.0).entries)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            build_w_matrix(-1, 1.0)
        with pytest.raises(ValueError):
            build_w_matrix(3, 0.0)
        with pytest.raises(ValueError):
            build_w_matrix(3, 1.0, "other")


class TestSeeds:
    @pytest.mark.parametrize("r", [0.3, 1.0, 4.0])
    def test_zeroth_column_constant(self, r):
        assert np.allclose(zeroth_column([1.0, 0, 0, 0], r), [2, 0, 0, 0], atol=1e-15)

    @pytest.mark.parametrize("r", [0.3, 1.0, 4.0])
    def test_zeroth_column_linear(self, r):
        got = zeroth_column([0.0, 1.0, 0, 0], r)
        assert np.allclose(got, [0, 2 * r / (r + 1), 0, 0], atol=1e-15)

    def test_zeroth_column_random(self, rng):
        f = random_kernel(rng, 20, 3.0)
        O = oracle_fredholm_matrix(f).entries
        assert np.max(np.abs(zeroth_column(f.coeffs, 3.0) - O[:, 0])) <= 1e-13 * np.max(np.abs(O))

    def test_first_column_constant_kernel(self):
        assert np.all(np.abs(first_column([1.0, 0, 0], 2.0)) <= 1e-16)

    def test_first_column_linear_kernel(self):
        # f(x) = x on [-3, 3]: int (x - t) t dt = -2/3
        col = first_column([0.0, 3.0], 2.0)
        assert col.size == 3
        assert np.allclose(col, [-2 / 3, 0, 0], atol=1e-15)

    def test_first_column_random(self, rng):
        f = random_kernel(rng, 20, 0.5)
        O = oracle_fredholm_matrix(f).entries
        col = first_column(f.coeffs, 0.5)
        assert np.max(np.abs(col[-2:])) <= 1e-13 * np.max(np.abs(O))
        assert np.max(np.abs(col[:-1] - O[:, 1])) <= 1e-13 * np.max(np.abs(O))

    def test_rows_constant_kernel(self):
        row0, row1 = zeroth_and_first_rows([1.0, 0, 0], 0.7)
        assert np.allclose(row0, [2, 0, 0], atol=1e-15)
        assert np.allclose(row1, 0, atol=1e-15)

    def test_rows_linear_kernel(self):
        row0, row1 = zeroth_and_first_rows([0.0, 3.0], 2.0)
        assert np.allclose(row0, [0, -2 / 3], atol=1e-15)
        assert np.allclose(row1, [4, 0], atol=1e-14)

    def test_rows_random(self, rng):
        f = random_kernel(rng, 30, 0.4)
        O = oracle_fredholm_matrix(f).entries
        row0, row1 = zeroth_and_first_rows(f.coeffs, 0.4)
        scale = np.max(np.abs(O))
        assert np.max(np.abs(row0 - O[0])) <= 1e-13 * scale
        assert np.max(np.abs(row1 - O[1])) <= 1e-13 * scale


class TestRecurrenceStep:
    def test_rightward_linear_kernel(self):
        r = 2.0
        assert recurrence_step("rightward", (2 * r, -2 / 3, 0.0), 1, 1, r) == pytest.approx(0, abs=1e-15)

    @given(
        st.sampled_from(list(DIRECTIONS)),
        st.tuples(*[st.floats(-1e3, 1e3)] * 3),
        st.integers(1, 50),
        st.integers(1, 50),
        st.floats(0.1, 50),
    )
    def test_directions_invert_each_other(self, direction, nbrs, m, n, r):
        # rightward/leftward and downward/upward solve the same identity for different entries
        p, q, s = nbrs
        if direction == "rightward":
            x = recurrence_step("rightward", (p, q, s), m, n, r)
            back = recurrence_step("leftward", (x, q, s), m, n, r)
        elif direction == "leftward":
            x = recurrence_step("leftward", (p, q, s), m, n, r)
            back = recurrence_step("rightward", (x, q, s), m, n, r)
        elif direction == "downward":
            x = recurrence_step("downward", (p, q, s), m, n, r)
            back = recurrence_step("upward", (x, q, s), m, n, r)
        else:
            x = recurrence_step("upward", (p, q, s), m, n, r)
            back = recurrence_step("downward", (x, q, s), m, n, r)
        assert back == pytest.approx(p, rel=1e-9, abs=1e-9 * (1 + abs(x) + abs(q) + abs(s)))

    def test_oracle_stencil_residual(self, rng):
        f = random_kernel(rng, 24, 2.0)
        R = oracle_fredholm_matrix(f).entries
        res = stencil_residuals(R, 2.0)
        assert res["rightward"] <= 1e-12 * np.max(np.abs(R))

    def test_bad_input(self):
        with pytest.raises(ValueError):
            recurrence_step("rightward", (0, 0, 0), 0, 1, 1.0)
        with pytest.raises(ValueError):
            recurrence_step("sideways", (0, 0, 0), 1, 1, 1.0)


class TestBuild:
    def test_constant_kernel_square(self):
        f = LegendreSeries((-3, 3), [1.0])
        R = build_fredholm_matrix(f, N=2, M=2).entries
        assert R.tolist() == [[2, 0, 0], [0, 0, 0], [0, 0, 0]]

    def test_constant_kernel_default_rows(self):
        R = build_fredholm_matrix(LegendreSeries((-3, 3), [1.0]), N=2)
        assert R.shape == (1, 3) and R.entries.tolist() == [[2, 0, 0]]

    def test_linear_kernel(self):
        R = build_fredholm_matrix(LegendreSeries((-3, 3), [0.0, 3.0]), N=1).entries
        assert np.allclose(R, [[0, -2 / 3], [4, 0]], atol=1e-15)

    def test_linear_kernel_small_ratio(self):
        R = build_fredholm_matrix(LegendreSeries((-1.5, 1.5), [0.0, 1.5]), N=1).entries
        assert np.allclose(R, [[0, -2 / 3], [1, 0]], atol=1e-15)

    def test_all_ones_degree39(self):
        f = LegendreSeries((-3, 3), np.ones(40))
        R = build_fredholm_matrix(f).entries
        O = oracle_fredholm_matrix(f).entries
        assert np.max(np.abs(R - O)) <= 1e-13 * np.max(np.abs(O))

    @pytest.mark.parametrize("r", RATIOS + [10.0, 100.0])
    @pytest.mark.parametrize("degree", [1, 2, 7, 25, 40])
    def test_oracle_equivalence(self, rng, r, degree):
        f = random_kernel(rng, degree, r)
        R = build_fredholm_matrix(f).entries
        O = oracle_fredholm_matrix(f).entries
        assert np.max(np.abs(R - O)) <= 1e-12 * np.max(np.abs(O))

    @pytest.mark.parametrize("r", [0.5, 2.0])
    def test_complex_kernel(self, rng, r):
        f = random_kernel(rng, 30, r, complex_=True)
        R = build_fredholm_matrix(f).entries
        O = oracle_fredholm_matrix(f).entries
        assert R.dtype == np.complex128
        assert np.max(np.abs(R - O)) <= 1e-12 * np.max(np.abs(O))
        Rre = build_fredholm_matrix(LegendreSeries(f.interval, f.coeffs.real)).entries
        Rim = build_fredholm_matrix(LegendreSeries(f.interval, f.coeffs.imag)).entries
        assert np.max(np.abs(R - (Rre + 1j * Rim))) <= 1e-13 * np.max(np.abs(R))

    @given(st.integers(0, 40), st.sampled_from(RATIOS + [7.5]), st.integers(0, 60), st.integers(0, 20))
    def test_exact_structural_zeros(self, degree, r, N, extra_rows):
        rng = np.random.default_rng(degree * 1000 + N)
        f = random_kernel(rng, degree, r)
        R = build_fredholm_matrix(f, N=N, M=degree + extra_rows)
        E = R.entries
        assert E.shape == (degree + extra_rows + 1, N + 1)
        m, n = np.indices(E.shape)
        assert np.all(E[m + n > degree] == 0.0)
        assert np.all(E[:, degree + 1 :] == 0.0)

    def test_linearity(self, rng):
        f1, f2 = random_kernel(rng, 30, 2.0), random_kernel(rng, 30, 2.0)
        alpha, beta = 1.7, -0.3
        combo = LegendreSeries(f1.interval, alpha * f1.coeffs + beta * f2.coeffs)
        R = build_fredholm_matrix(combo).entries
        R12 = alpha * build_fredholm_matrix(f1).entries + beta * build_fredholm_matrix(f2).entries
        assert np.max(np.abs(R - R12)) <= 1e-13 * np.max(np.abs(R))

    @pytest.mark.parametrize("r", RATIOS)
    def test_stencil_residuals(self, rng, r):
        f = random_kernel(rng, 40, r)
        R = build_fredholm_matrix(f).entries
        res = stencil_residuals(R, r)
        assert max(res.values()) <= 1e-10 * np.max(np.abs(R))

    def test_ratio_must_be_positive(self):
        with pytest.raises(IntervalError):
            convolution_matrix([1.0], 0.0)
        with pytest.raises(IntervalError):
            kernel_ratio(LegendreSeries((-1, 1), [1.0]))
        with pytest.raises(IntervalError):
            kernel_ratio(LegendreSeries((-1, 3), [1.0]))

    def test_row_count_below_degree(self):
        with pytest.raises(ValueError):
            convolution_matrix(np.ones(5), 2.0, M=3)

    def test_apply_matches_dense(self, rng):
        f = random_kernel(rng, 12, 1.5)
        R = build_fredholm_matrix(f, N=30, M=20)
        for size in (3, 31, 45):
            b = rng.standard_normal(size)
            bb = np.zeros(31)
            bb[: min(size, 31)] = b[:31]
            assert np.allclose(R @ b, R.entries @ bb, atol=1e-14)

    def test_matrix_is_immutable(self, rng):
        R = build_fredholm_matrix(random_kernel(rng, 5, 2.0), N=8)
        with pytest.raises(ValueError):
            R.entries[0, 0] = 1.0
        with pytest.raises(ValueError):
            FredholmMatrix(np.zeros((3, 3)), 1.0, 2, (2, 2))


class TestNaive:
    def test_blows_up(self):
        f = LegendreSeries((-3, 3), np.ones(40))
        Rn = build_fredholm_matrix_naive(f).entries
        O = oracle_fredholm_matrix(f).entries
        err = np.abs(Rn - O)
        assert err.max() >= 1e6
        assert err[1, 37] >= 1e10

    def test_agrees_with_stable_in_column_region(self):
        f = LegendreSeries((-3, 3), np.ones(40))
        Rn = build_fredholm_matrix_naive(f).entries
        Rs = build_fredholm_matrix(f).entries
        m, n = np.indices(Rs.shape)
        region = m >= 2.0 * n
        assert np.max(np.abs(Rn - Rs)[region]) <= 1e-12 * np.max(np.abs(Rs))

    def test_requires_ratio_at_least_one(self):
        with pytest.raises(ValueError):
            build_fredholm_matrix_naive(LegendreSeries((-1.5, 1.5), np.ones(4)))


class TestConvolution:
    def test_constants(self):
        h = fredholm_conv(LegendreSeries((-3, 3), [1.0]), LegendreSeries((-1, 1), [1.0]))
        assert h.interval == Interval(-2, 2)
        assert np.allclose(h.coeffs, [2.0], atol=1e-15)

    def test_linear_kernel(self):
        h = fredholm_conv(LegendreSeries((-3, 3), [0.0, 3.0]), LegendreSeries((-1, 1), [1.0]))
        x = np.linspace(-2, 2, 9)
        assert np.allclose(h(x), 2 * x, atol=1e-14)

    def test_symmetric_in_arguments(self, rng):
        f = LegendreSeries((0.0, 5.0), rng.standard_normal(12))
        g = LegendreSeries((-1.0, 0.5), rng.standard_normal(7))
        h1, h2 = fredholm_conv(f, g), fredholm_conv(g, f)
        assert h1.interval == h2.interval
        assert np.array_equal(h1.coeffs, h2.coeffs)

    def test_equal_lengths_rejected(self):
        with pytest.raises(IntervalError):
            fredholm_conv(LegendreSeries((0, 2), [1.0]), LegendreSeries((5, 7), [1.0]))

    @pytest.mark.parametrize(
        "fi, gi, fdeg, gdeg",
        [
            ((0.0, 5.0), (-1.0, 0.5), 12, 7),
            ((-2.0, 1.0), (0.0, 0.4), 30, 45),
            ((1.0, 2.0), (3.0, 3.8), 20, 20),
            ((-4.0, 4.0), (-1.0, 1.0), 35, 5),
        ],
    )
    def test_against_quadrature(self, rng, fi, gi, fdeg, gdeg):
        f = LegendreSeries(fi, rng.standard_normal(fdeg + 1) / (1 + np.arange(fdeg + 1)))
        g = LegendreSeries(gi, rng.standard_normal(gdeg + 1) / (1 + np.arange(gdeg + 1)))
        h = fredholm_conv(f, g)
        (a, b), (c, d) = f.interval, g.interval
        assert h.interval == Interval(a + d, b + c)
        x = np.linspace(a + d, b + c, 40)
        ref = fredholm_integral(f, g, x, g.interval, fdeg + gdeg + 2)
        assert np.max(np.abs(h(x) - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))

    def test_complex_inputs(self, rng):
        f = LegendreSeries((-3, 2), rng.standard_normal(15) + 1j * rng.standard_normal(15))
        g = LegendreSeries((0, 1), rng.standard_normal(6))
        h = fredholm_conv(f, g)
        x = np.linspace(*h.interval, 25)
        ref = fredholm_integral(f, g, x, g.interval, 30)
        assert np.max(np.abs(h(x) - ref)) <= 1e-12 * np.max(np.abs(ref))
