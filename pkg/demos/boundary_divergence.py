"""Partial integrals at the admissibility boundary grow without bound.

The same profile with mu moved inside the admissible range settles down.
"""

from kplane.constants import Geometry
from kplane.experiments import divergence_demo

for case, geom, p, delta in [("boundary", Geometry(2, 1), 2.0, 0.2), ("endpoint-p1", Geometry(3, 1), 1.0, 0.5)]:
    rep = divergence_demo(case, geom, p, delta)
    print(f"\n{case}: fitted growth exponent {rep.lhs:.4f}, predicted {rep.target:.4f}  [{rep.status}]")
    print(f"{'R':>12} {'at boundary':>16} {'inside':>16}")
    for row in rep.table[::2]:
        print(f"{row['R']:>12.3g} {row['A']:>16.8g} {row['A_inside']:>16.8g}")
