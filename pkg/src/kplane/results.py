"""Value types shared by every numerical routine in the package.

Finite numerical results are :class:`Estimate` instances (value plus error
estimate). Integrals or constants that are infinite for structural reasons
(a Gamma pole, a non-integrable tail) are reported as :class:`Divergent`
rather than as a float infinity, so callers can tell a pole from overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class AdmissibilityError(ValueError):
    """Parameters lie strictly outside the region where a formula applies."""


class ContractError(ValueError):
    """Inputs violate a structural precondition (e.g. inconsistent exponents)."""


class DegeneratePlaneError(ValueError):
    """A plane offset is zero where a nonzero offset is required."""


class AccuracyError(RuntimeError):
    """A quadrature rule failed to reach its tolerance after refinement."""


@dataclass(frozen=True)
class Estimate:
    value: float
    error: float = 0.0
    approximate: bool = False

    def __float__(self) -> float:
        return float(self.value)

    @property
    def rel_error(self) -> float:
        if self.value == 0.0:
            return 0.0 if self.error == 0.0 else math.inf
        return abs(self.error / self.value)


@dataclass(frozen=True)
class Divergent:
    reason: str

    def __float__(self) -> float:
        return math.inf


def is_divergent(x) -> bool:
    return isinstance(x, Divergent)


def value_of(x) -> float:
    """Plain float of a float, :class:`Estimate` or :class:`Divergent` (inf)."""
    return float(x)
