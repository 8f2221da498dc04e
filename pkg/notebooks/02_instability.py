"""
Why the build direction matters
===============================

Run the rightward recurrence over the whole triangle and compare with the
stable build and with quadrature, for the all-ones kernel of degree 39 on
[-3, 3] (interval ratio r = 2).
"""

import numpy as np

from fredconv.fredholm import build_fredholm_matrix, build_fredholm_matrix_naive
from fredconv.legendre import LegendreSeries
from fredconv.oracle import oracle_fredholm_matrix

f = LegendreSeries((-3.0, 3.0), np.ones(40))
R_ref = oracle_fredholm_matrix(f).entries
R_stable = build_fredholm_matrix(f).entries
R_naive = build_fredholm_matrix_naive(f).entries

scale = np.max(np.abs(R_ref))
print(f"stable: max error {np.max(np.abs(R_stable - R_ref)):.2e} (relative {np.max(np.abs(R_stable - R_ref)) / scale:.2e})")

err = np.abs(R_naive - R_ref)
m, n = np.unravel_index(np.argmax(err), err.shape)
print(f"naive:  max error {err.max():.3e} at ({m}, {n}); at (1, 37): {err[1, 37]:.3e}")

# %%
# The error of the naive build grows along each row as the recurrence
# moves right, roughly geometrically.
print("log10 error along row 1:")
print(np.round(np.log10(err[1, :39] + 1e-300), 1))

# %%
# Both matrices are exactly zero below the anti-diagonal.
mm, nn = np.indices(R_stable.shape)
print("zero below anti-diagonal:", np.all(R_stable[mm + nn > 39] == 0), np.all(R_naive[mm + nn > 39] == 0))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.5))
    for ax, R, title in zip(axes, (R_stable, R_naive), ("stable", "naive")):
        im = ax.imshow(np.log10(np.abs(R - R_ref) + 1e-18), cmap="viridis")
        ax.set_title(f"{title}: log10 |R - R_ref|")
        fig.colorbar(im, ax=ax)
    fig.savefig("instability.png", dpi=150, bbox_inches="tight")
    print("wrote instability.png")
