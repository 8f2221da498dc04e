"""
A second-kind integral equation with a Lorentzian kernel
========================================================

Solve y(t) - (1/pi) int_0^1 y(s) / (1 + (t-s)^2) ds = f(t) on [0, 5], with the
right-hand side chosen so that y = 1, and watch the solution converge.
"""

import numpy as np

from fredconv.builtins import love_equation
from fredconv.solver import solve_second_kind

eq = love_equation(delta=-1.0, output=(0.0, 5.0))
print(f"kernel interval {eq.kernel_interval}, interval ratio {eq.ratio:g}")

sol = solve_second_kind(eq, tol=1e-14, full_output=True)
t = np.linspace(0, 5, 200)
print(f"degree {sol.y.degree}, residual {sol.residual:.2e}, condition {sol.condition:.3f}")
print(f"max |y - 1| = {np.max(np.abs(sol.y(t) - 1)):.2e}")

# %%
# Tightening the tolerance raises the degree until the rounding floor.
for tol in (1e-4, 1e-8, 1e-12):
    y = solve_second_kind(eq, tol=tol)
    print(f"tol {tol:.0e}: degree {y.degree:3d}, max |y - 1| {np.max(np.abs(y(t) - 1)):.1e}")

# %%
# Other values of delta, still with the exact solution y = 1.
for delta in (-0.5, 0.5, 2.0):
    y = solve_second_kind(love_equation(delta), tol=1e-13)
    print(f"delta {delta:+.1f}: degree {y.degree:3d}, max |y - 1| {np.max(np.abs(y(t) - 1)):.1e}")
