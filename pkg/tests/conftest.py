import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fredconv import _kernels
from fredconv.legendre import Interval, LegendreSeries, interpolate

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# (criterion number, passed, detail) collected by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    _kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_kernel(rng, degree, r, complex_=False, decay=True):
    a = rng.standard_normal(degree + 1)
    if complex_:
        a = a + 1j * rng.standard_normal(degree + 1)
    if decay:
        a = a / (1.0 + np.arange(degree + 1))
    return LegendreSeries(Interval(-(r + 1), r + 1), a)


@pytest.fixture(scope="session")
def exp_kernel():
    # degree-17 approximant of e^x on [-2, 2]
    return interpolate(np.exp, (-2.0, 2.0), 17)
