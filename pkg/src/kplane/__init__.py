"""Weighted norm estimates for k-plane transforms, j-plane to k-plane transforms and their duals.

Closed-form sharp constants live in :mod:`kplane.constants`; the radial
reductions used for high-accuracy checks in :mod:`kplane.radial`; general
transforms in :mod:`kplane.transforms`; and executable checks of the
identities and bounds in :mod:`kplane.experiments`.
"""

__version__ = "0.1.0"

from .constants import (  # noqa: E402
    ExponentProfile,
    Geometry,
    lambda_jk,
    lambda_jk_dual,
    lambda_mu,
    lambda_mu_dual,
    sharp_norm,
    sharp_norm_Rjk,
    sharp_norm_Rjk_dual,
    sharp_norm_Rk,
    sharp_norm_Rk_dual,
    unit_sphere_area,
    validate_parameters,
)
from .geometry import AffinePlane, QuadratureSpec, make_rng  # noqa: E402
from .results import (  # noqa: E402
    AccuracyError,
    AdmissibilityError,
    ContractError,
    DegeneratePlaneError,
    Divergent,
    Estimate,
)

__all__ = [
    "AccuracyError",
    "AdmissibilityError",
    "AffinePlane",
    "ContractError",
    "DegeneratePlaneError",
    "Divergent",
    "Estimate",
    "ExponentProfile",
    "Geometry",
    "QuadratureSpec",
    "lambda_jk",
    "lambda_jk_dual",
    "lambda_mu",
    "lambda_mu_dual",
    "make_rng",
    "sharp_norm",
    "sharp_norm_Rjk",
    "sharp_norm_Rjk_dual",
    "sharp_norm_Rk",
    "sharp_norm_Rk_dual",
    "unit_sphere_area",
    "validate_parameters",
]
