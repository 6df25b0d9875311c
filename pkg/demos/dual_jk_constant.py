"""Two candidate constants for the dual j->k transform, tested numerically.

"duality" is the forward constant at the conjugate exponents. "displayed"
is the forward Gamma quotient evaluated directly at the dual exponents.
Extremizer ratios decide between them.
"""

from kplane.constants import Geometry
from kplane.experiments import dual_jk_constant_audit

rep = dual_jk_constant_audit(Geometry(4, 2, 1))
for row in rep.table:
    if "j" in row:
        print(f"j=0 check at p={row['p']}, mu={row['mu']}: duality reduces: {row['ok']}, "
              f"displayed reduces: {row['displayed_reduces']}")
        continue
    print(f"p={row['p']:<4} mu={row['mu']:<5} displayed={row['displayed']:.6f} duality={row['duality']:.6f} "
          f"empirical={row['empirical_extrapolated']:.6f} -> {row['supports']}")
print(rep.status)
