"""Solutions under exponents converging monotonically to p.

The 1D problem f = 1, phi = 0, p = 2 is solved for p_i = 2 -/+ 0.5 / i.
Every column of the report tends to zero; D_grad_modular falls roughly like
sup_gap^2, while lux_norm_diff and modular_gap fall only like sup_gap.
"""

import numpy as np

from varexp import DirichletProblem, ExponentField, interval, make_schedule, run_stability

mesh = interval(0, 1, 256)
problem = DirichletProblem(mesh, ExponentField.constant(2.0, mesh),
                           np.zeros(mesh.num_vertices), np.ones(mesh.num_vertices))

for direction in ("increasing", "decreasing"):
    schedule = make_schedule(problem.p, direction, 12, 0.5)
    report = run_stability(problem, schedule, workers=4)
    print(direction)
    print(report.to_csv())
    gaps = report.column("sup_gap")
    for name in ("D_grad_modular", "lux_norm_diff", "modular_gap"):
        slope = np.polyfit(np.log(gaps[-6:]), np.log(report.column(name)[-6:]), 1)[0]
        print(f"  {name:<15} empirical order in sup_gap: {slope:.2f}")
