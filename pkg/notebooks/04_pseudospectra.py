"""
Eigenvalues and pseudospectra of a laser-resonator operator
============================================================

The operator u -> int_{-1}^1 sqrt(iF/pi) exp(-iF(x-t)^2) u(t) dt with
F = 64 pi. Finite sections are compared at two sizes before trusting them.
"""

import time

import numpy as np

from fredconv.builtins import builtin_series
from fredconv.spectra import (
    complex_grid,
    eigenvalue_certificate,
    eigenvalues,
    operator_section,
    pseudospectra,
    pseudospectrum_certificate,
)

f = builtin_series("huygens-fresnel")
print(f"kernel degree {f.degree}")

# %%
# Eigenvalues of the section at M = 600, and a check against M = 650.
A = operator_section(f, 600)
lam = eigenvalues(A)
print("largest eigenvalues:")
for v in lam[:8]:
    print(f"  {v.real:+.6f} {v.imag:+.6f}i  |.| = {abs(v):.6f}")
for M in (400, 550, 600):
    print(eigenvalue_certificate(f, M))

# %%
# sigma_min(zI - A) at probes on two circles; z = 0 is avoided because the
# spectrum accumulates there and sigma_min never settles.
probes = np.concatenate(
    [0.5 * np.exp(2j * np.pi * np.arange(5) / 5), np.exp(1j * np.pi * (2 * np.arange(5) + 1) / 5)]
)
for M in (200, 400, 600):
    print(pseudospectrum_certificate(f, M, probes))

# %%
# A coarse grid for contour plots.
t0 = time.perf_counter()
z = complex_grid((-1.2, 1.2), (-1.2, 1.2), (25, 25))
ps = pseudospectra(A, z)
print(f"25 x 25 grid in {time.perf_counter() - t0:.1f} s; sigma_min range "
      f"[{ps.sigma_min.min():.1e}, {ps.sigma_min.max():.2f}]")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.contour(z.real, z.imag, np.log10(ps.sigma_min), levels=np.log10(ps.eps_levels[::-1]))
    ax.plot(lam.real, lam.imag, "k.", ms=2)
    ax.set_aspect("equal")
    fig.savefig("pseudospectra.png", dpi=150, bbox_inches="tight")
    print("wrote pseudospectra.png")
