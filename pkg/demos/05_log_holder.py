"""Estimating the log-Hoelder constant of an exponent from samples.

Smooth exponents give estimates that settle under refinement (for p = 2 + x
the limit is 1/e).  A jump gives estimates that grow like log n.
"""

import numpy as np

from varexp import ExponentField, build_exponent, interval, log_holder_constant

for n in (16, 64, 256, 1024):
    mesh = interval(0, 1, n)
    smooth = log_holder_constant(build_exponent("2 + x", mesh), mesh)
    step = ExponentField(np.where(mesh.barycenters[:, 0] < 0.5, 2.0, 3.0))
    print(f"n = {n:5d}  2 + x: {smooth:.6f}   step: {log_holder_constant(step, mesh):.4f}"
          f"  (log n = {np.log(n):.4f})")
print(f"1/e = {1 / np.e:.6f}")
