"""Named kernels and right-hand sides used by the demos and the CLI."""

from __future__ import annotations

import numpy as np

from .legendre import Interval, LegendreSeries, approximate, interpolate

__all__ = [
    "love_kernel",
    "love_rhs",
    "love_equation",
    "huygens_fresnel_kernel",
    "heat_kernel",
    "weierstrass_function",
    "weierstrass_pair",
    "builtin_series",
    "BUILTIN_NAMES",
    "WEIERSTRASS_INTERVAL",
    "HEAT_INTERVAL",
]

WEIERSTRASS_INTERVAL = Interval(0.2885554757, 0.3549060246)
HEAT_INTERVAL = Interval(-3e-3, 3e-3)


def love_kernel(delta: float = -1.0):
    """u -> 1 / (delta^2 + u^2)."""
    d2 = float(delta) ** 2
    return lambda u: 1.0 / (d2 + np.asarray(u) ** 2)


def love_rhs(delta: float = -1.0):
    """Right-hand side for which y = 1 solves the equation on [0, 1].

    1 + (arctan(t/delta) + arctan((1-t)/delta)) / pi, which for delta = -1 is
    1 - (arctan(1-t) + arctan(t)) / pi.
    """
    d = float(delta)
    if d == 0:
        raise ValueError("delta must be nonzero")
    return lambda t: 1.0 + (np.arctan(np.asarray(t) / d) + np.arctan((1.0 - np.asarray(t)) / d)) / np.pi


def love_equation(delta: float = -1.0, output=(0.0, 5.0)):
    """y(t) + delta/pi * int_0^1 y(s) / (delta^2 + (t-s)^2) ds = f(t) on ``output``."""
    from .solver import IntegralEquation

    return IntegralEquation(
        kernel=love_kernel(delta),
        mu=-float(delta) / np.pi,
        rhs=love_rhs(delta),
        integration_interval=Interval(0.0, 1.0),
        output_interval=Interval.coerce(output),
    )


def huygens_fresnel_kernel(F: float = 64 * np.pi):
    """u -> sqrt(iF/pi) exp(-i F u^2), the laser-resonator kernel."""
    scale = np.sqrt(1j * F / np.pi)
    return lambda u: scale * np.exp(-1j * F * np.asarray(u) ** 2)


def heat_kernel(t: float = 1e-7):
    """Gaussian heat kernel at time ``t``."""
    c = 1.0 / np.sqrt(4 * np.pi * t)
    return lambda x: c * np.exp(-np.asarray(x) ** 2 / (4 * t))


def weierstrass_function(x):
    """sin(1/x) sin(1/sin(1/x)); oscillates without bound near x = 1/pi."""
    x = np.asarray(x, dtype=float)
    s = np.sin(1.0 / x)
    return s * np.sin(1.0 / s)


def weierstrass_pair(f_degree: int = 2000, g_degree: int = 65):
    """Fixed-degree interpolants of the rough function and of the narrow heat kernel.

    The rough factor is not smooth on its interval, so no adaptive degree
    exists for it; both factors are taken at fixed degree instead.
    """
    f = interpolate(weierstrass_function, WEIERSTRASS_INTERVAL, f_degree)
    g = interpolate(heat_kernel(1e-7), HEAT_INTERVAL, g_degree)
    return f, g


def _ones(degree: int = 39, r: float = 2.0, **_) -> LegendreSeries:
    return LegendreSeries(Interval(-(r + 1), r + 1), np.ones(int(degree) + 1))


BUILTIN_NAMES = ("love", "huygens-fresnel", "heat", "exp", "ones")


def builtin_series(name: str, tol: float = 1e-14, **params) -> LegendreSeries:
    """Legendre approximant of a named kernel on its default (or given) interval.

    ======================= ===================== ==========================
    name                    parameters            default interval
    ======================= ===================== ==========================
    ``love``                delta (-1)            [-6, 6] (r = 5)
    ``huygens-fresnel``     F (64 pi)             [-2, 2] (r = 1)
    ``heat``                t (1e-2)              [-2, 2]
    ``exp``                                       [-2, 2]
    ``ones``                degree (39), r (2)    [-(r+1), r+1]
    ======================= ===================== ==========================

    An ``interval`` parameter overrides the default (except for ``ones``).
    """
    if name == "ones":
        return _ones(**params)
    interval = params.pop("interval", (-2.0, 2.0))
    if name == "love":
        fn = love_kernel(params.pop("delta", -1.0))
        interval = interval if interval != (-2.0, 2.0) else (-6.0, 6.0)
    elif name == "huygens-fresnel":
        fn = huygens_fresnel_kernel(params.pop("F", 64 * np.pi))
    elif name == "heat":
        fn = heat_kernel(params.pop("t", 1e-2))
    elif name == "exp":
        fn = np.exp
    else:
        raise ValueError(f"unknown builtin kernel {name!r}; choose from {BUILTIN_NAMES}")
    if params:
        raise ValueError(f"unexpected parameters for {name!r}: {sorted(params)}")
    return approximate(fn, interval, tol=tol)
