"""
Fredholm convolution of a rough function with a narrow heat kernel
===================================================================

Convolve the oscillatory ``sin(1/x) sin(1/sin(1/x))`` near ``x = 1/pi`` with
a Gaussian of width about 6e-4 and check the result against direct
quadrature of the same two polynomial factors.
"""

import time

import numpy as np

from fredconv.builtins import weierstrass_function, weierstrass_pair
from fredconv.fredholm import fredholm_conv
from fredconv.oracle import fredholm_integral

# %%
# Both factors are taken at fixed degree: 2000 for the rough function (which
# has no finite resolution) and 65 for the Gaussian.
f, g = weierstrass_pair(2000, 65)
print(f"f: degree {f.degree} on {f.interval}")
print(f"g: degree {g.degree} on {g.interval}")

# %%
# The longer factor plays the role of the kernel. The result lives on the
# interval where the integral over g's support is fully inside f's support.
t0 = time.perf_counter()
h = fredholm_conv(f, g)
print(f"h: degree {h.degree} on {h.interval}, {time.perf_counter() - t0:.2f} s")

x = np.linspace(h.interval.lo, h.interval.hi, 100)
ref = fredholm_integral(f, g, x, g.interval, 1200)
print(f"max |h - quadrature| = {np.max(np.abs(h(x) - ref)):.2e}")

# %%
# The smoothing is visible: h varies on the Gaussian's scale, not on the
# scale of the oscillations of f.
xs = np.linspace(h.interval.lo, h.interval.hi, 2000)
print(f"max |f| = {np.max(np.abs(weierstrass_function(xs))):.3f}, max |h| = {np.max(np.abs(h(xs))):.3f}")
print(f"mass of the heat kernel on its interval: {g.coeffs[0] * g.interval.length:.12f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(xs, weierstrass_function(xs), lw=0.3, label="f")
    ax.plot(xs, h(xs), lw=1.5, label="h = f * g")
    ax.legend()
    fig.savefig("convolution.png", dpi=150, bbox_inches="tight")
    print("wrote convolution.png")

