"""Randomized checks of the variable exponent inequalities.

Runs every suite for a few hundred seeded trials and reports the smallest
relative slack rhs - lhs.  Slack near zero for the norm-modular suite comes
from the constant-exponent family, where that bound is attained.
"""

import numpy as np

from varexp.checks import SUITES, run_suite

for suite in SUITES:
    rows = run_suite(suite, trials=300, seed=1)
    by_name = {}
    for r in rows:
        by_name.setdefault(r.check_name, []).append(r)
    for name, group in by_name.items():
        slack = np.array([(r.rhs - r.lhs) / max(1.0, abs(r.rhs)) for r in group])
        print(f"{name:<18} trials {len(group):4d}  violations {sum(not r.satisfied for r in group)}"
              f"  min relative slack {slack.min():.2e}")
