"""Watch extremizer ratios climb towards the sharp constant sqrt(pi).

Setting: X-ray transform on the plane (n=2, k=1), p=2, weight |x|^1.
"""

import math

from kplane.constants import ExponentProfile, Geometry, sharp_norm
from kplane.experiments import norm_sweep

geom, exps = Geometry(2, 1), ExponentProfile(2.0, 1.0)
print(f"closed form: {sharp_norm(geom, exps, 'forward-k'):.10f}  (sqrt(pi) = {math.sqrt(math.pi):.10f})")

rep = norm_sweep("forward-k", geom, 2.0, 1.0, eps=(0.2, 0.1, 0.05, 0.02, 0.01, 0.005))
print(f"{'eps':>8} {'ratio':>14}")
for row in rep.table:
    print(f"{row['eps']:>8g} {row['ratio']:>14.10f}")
print(f"extrapolated eps -> 0: {rep.lhs:.6f}   status: {rep.status}")
