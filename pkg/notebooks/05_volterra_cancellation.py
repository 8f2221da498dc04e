"""
Assembling the r = 1 matrix from two Volterra pieces
====================================================

At r = 1 the Fredholm convolution matrix can also be assembled from two
banded Volterra matrices. The two agree inside the skew triangle, but the
combination leaves rounding-level debris outside it where the direct build
has exact zeros.
"""

import numpy as np

from fredconv.fredholm import build_fredholm_matrix
from fredconv.legendre import interpolate
from fredconv.oracle import cancellation_demo, volterra_fredholm_matrix

f = interpolate(np.exp, (-2.0, 2.0), 17)
M = f.degree
R_hat = volterra_fredholm_matrix(f)
R = build_fredholm_matrix(f).entries
m, n = np.indices(R.shape)
inside = m + n <= M
print(f"R_hat is {R_hat.shape[0]} x {R_hat.shape[1]}, R is {R.shape[0]} x {R.shape[1]}")
print(f"in-triangle max |R_hat - R| = {np.max(np.abs(R_hat[: M + 1][inside] - R[inside])):.2e}")

grids = cancellation_demo(f)
debris = grids.volterra[: M + 1][~inside]
print(f"off-triangle |R_hat| in [{debris.min():.1e}, {debris.max():.1e}]; R there: {np.unique(grids.stable[~inside])}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.5))
    for ax, G, title in zip(axes, (grids.volterra[: M + 1], grids.stable), ("Volterra combination", "direct build")):
        im = ax.imshow(np.log10(G + 1e-300), vmin=-20, vmax=1)
        ax.set_title(title)
        fig.colorbar(im, ax=ax)
    fig.savefig("cancellation.png", dpi=150, bbox_inches="tight")
    print("wrote cancellation.png")
