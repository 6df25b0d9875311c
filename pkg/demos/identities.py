"""Check the weighted-moment identities on a few profiles and geometries.

Each line compares a weighted integral of the transform with a constant times
a weighted integral of the input. Both sides are computed by quadrature.
"""

from kplane.constants import Geometry
from kplane.experiments import verify_identity_jk, verify_identity_k, verify_identity_k_dual

cases = [
    ("forward k", lambda: verify_identity_k("gaussian", Geometry(3, 1), 1.0)),
    ("forward k, damped", lambda: verify_identity_k("family=shell, inner=0.5, outer=1.5", Geometry(4, 2), 0.0,
                                                     variant="damped")),
    ("forward j->k", lambda: verify_identity_jk("gaussian_power, alpha=1, rate=0.7", Geometry(5, 3, 1), 0.5)),
    ("dual k, kappa=1", lambda: verify_identity_k_dual("gaussian", Geometry(3, 2), -0.5, 1)),
    ("dual k, sampled", lambda: verify_identity_k_dual("gaussian", Geometry(3, 1), -1.5, 1, method="monte-carlo")),
]
for name, run in cases:
    r = run()
    err = f"+- {r.lhs_err:.1e}" if r.lhs_err else ""
    print(f"{name:<20} lhs={r.lhs:.12g} {err:<10} rhs={r.rhs:.12g}  {r.status}")
