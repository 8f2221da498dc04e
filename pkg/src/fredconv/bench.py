"""Timing harness for the stable convolution-matrix build.

Configurations are timed round-robin (every repetition visits every
configuration once) so that slow drift of the machine affects all of them
alike, and each configuration reports the median over repetitions.
"""

from __future__ import annotations

import itertools
import time
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .fredholm import convolution_matrix


class Timing(NamedTuple):
    M: int
    N: int
    r: float
    seconds: float


class ScalingCheck(NamedTuple):
    name: str
    ratio: float
    lo: float
    hi: float

    @property
    def passed(self) -> bool:
        return self.lo <= self.ratio <= self.hi


def _kernel_coeffs(M: int, seed: int = 0) -> np.ndarray:
    # decaying random coefficients; the values do not affect the cost
    rng = np.random.default_rng(seed + M)
    return rng.standard_normal(M + 1) / (1.0 + np.arange(M + 1))


def time_builds(
    configs: Sequence[tuple[int, int, float]],
    repeats: int = 9,
    warmup: int = 2,
) -> list[Timing]:
    """Median wall time of ``convolution_matrix`` for each (M, N, r)."""
    if repeats < 5:
        raise ValueError("need at least 5 repetitions for a median")
    _kernels.warmup()
    coeffs = {M: _kernel_coeffs(M) for M, _, _ in configs}
    samples = [[] for _ in configs]
    for rep in range(warmup + repeats):
        for i, (M, N, r) in enumerate(configs):
            t0 = time.perf_counter()
            convolution_matrix(coeffs[M], r, N)
            dt = time.perf_counter() - t0
            if rep >= warmup:
                samples[i].append(dt)
    return [
        Timing(M, N, float(r), float(np.median(s)))
        for (M, N, r), s in zip(configs, samples)
    ]


def run_grid(
    M_list: Sequence[int],
    N_list: Sequence[int],
    r_list: Sequence[float],
    repeats: int = 9,
) -> list[Timing]:
    """Time the full cross product of kernel degrees, column counts and ratios."""
    if not (M_list and N_list and r_list):
        raise ValueError("M, N and r lists must be nonempty")
    configs = list(itertools.product(M_list, N_list, r_list))
    return time_builds(configs, repeats=repeats)


def scaling_checks(M: int = 400, repeats: int = 15) -> list[ScalingCheck]:
    """Quadratic growth in M, and independence of N and of r, at degree M.

    Growth compares M/2 with M and must give a time ratio in [3, 6]; the
    other two compare the slowest and fastest configuration, which must be
    within 25% of each other.
    """
    half = M // 2
    n_list = [max(1, M // 10), 10 * M]
    r_list = [1.0, 2.0, 10.0, 100.0]
    configs = [(half, half, 2.0), (M, M, 2.0)]
    configs += [(M, n, 2.0) for n in n_list]
    configs += [(M, M, r) for r in r_list]
    t = [x.seconds for x in time_builds(configs, repeats=repeats)]
    growth = t[1] / t[0]
    tn = t[2:4]
    tr = t[4:]
    return [
        ScalingCheck(f"M {half}->{M}", growth, 3.0, 6.0),
        ScalingCheck(f"N in {n_list} at M={M}", max(tn) / min(tn), 1.0, 1.25),
        ScalingCheck(f"r in {r_list} at M={M}", max(tr) / min(tr), 1.0, 1.25),
    ]


def summarize(timings: Sequence[Timing]) -> list[ScalingCheck]:
    """Scaling checks that can be read off an arbitrary timing grid.

    For each pair of consecutive doublings in M (same N, r) the growth ratio
    must lie in [3, 6]; at each M, the spread over N (same r) and over r
    (same N) must stay within 25%.
    """
    by_key = {(t.M, t.N, t.r): t.seconds for t in timings}
    Ms = sorted({t.M for t in timings})
    Ns = sorted({t.N for t in timings})
    rs = sorted({t.r for t in timings})
    checks = []
    for M in Ms:
        if 2 * M in Ms:
            ratios = [
                by_key[(2 * M, N, r)] / by_key[(M, N, r)]
                for N in Ns
                for r in rs
                if (M, N, r) in by_key and (2 * M, N, r) in by_key
            ]
            if ratios:
                checks.append(ScalingCheck(f"M {M}->{2 * M}", float(np.median(ratios)), 3.0, 6.0))
    for M in Ms:
        if len(Ns) > 1:
            spread = max(
                max(by_key[(M, N, r)] for N in Ns) / min(by_key[(M, N, r)] for N in Ns)
                for r in rs
            )
            checks.append(ScalingCheck(f"N spread at M={M}", spread, 1.0, 1.25))
        if len(rs) > 1:
            spread = max(
                max(by_key[(M, N, r)] for r in rs) / min(by_key[(M, N, r)] for r in rs)
                for N in Ns
            )
            checks.append(ScalingCheck(f"r spread at M={M}", spread, 1.0, 1.25))
    return checks
