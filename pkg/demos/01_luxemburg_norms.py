"""Luxemburg norms with a variable exponent.

For a constant exponent the Luxemburg norm is the usual L^p norm.  With
p(x) = 2 + x it is the root of lam -> int (|f| / lam)^p(x) dx = 1, which we
print next to the modular and the two-sided bound max(rho^(1/p+), rho^(1/p-)).
"""

import numpy as np

from varexp import build_exponent, interval, luxemburg_norm, modular, norm_modular_gap

mesh = interval(0.0, 1.0, 256)
x = mesh.barycenters[:, 0]

for expr in ("2", "2 + x", "1.5 + 0.4*sin(3*x)"):
    p = build_exponent(expr, mesh)
    for label, f in (("f = 2", np.full_like(x, 2.0)), ("f = exp(x)", np.exp(x)),
                     ("f = x/10", x / 10)):
        norm = luxemburg_norm(f, p, mesh)
        gap = norm_modular_gap(f, p, mesh)
        print(f"p = {expr:<20} {label:<11} norm {norm.value:.10f}  modular {modular(f, p, mesh):.6f}"
              f"  bound {gap.rhs:.6f} ({gap.note}), {norm.bisection_iterations} bisections")

# the norm of f = 2 under p = 2 + x is exactly 2: (2 / 2)^p = 1 for every p
