"""Closed-form constants: sphere areas, the L^1 multipliers and sharp operator norms.

Every constant is a quotient of Gamma values and is assembled in log space;
only the final result is exponentiated.

Exponent handling never divides by ``p``: an :class:`ExponentProfile` carries
``1/p`` and ``1/p'`` directly, with ``p = inf`` mapped to ``(0, 1)`` and
``p = 1`` to ``(1, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .results import AdmissibilityError, ContractError, Divergent

Setting = Literal["forward-k", "forward-jk", "dual-k", "dual-jk"]
SETTINGS: tuple[str, ...] = ("forward-k", "forward-jk", "dual-k", "dual-jk")

_EULER_GAMMA = 0.57721566490153286060651209008240243
# zeta(k) for k = 2..61, coefficients of the series of ln Gamma(1 + z)
_ZETA = (
    1.6449340668482264, 1.2020569031595942, 1.0823232337111381,
    1.03692775514337, 1.0173430619844492, 1.008349277381923,
    1.0040773561979444, 1.0020083928260821, 1.000994575127818,
    1.0004941886041194, 1.000246086553308, 1.0001227133475785,
    1.0000612481350588, 1.000030588236307, 1.0000152822594086,
    1.0000076371976379, 1.000003817293265, 1.0000019082127165,
    1.0000009539620338, 1.0000004769329869, 1.0000002384505027,
    1.000000119219926, 1.000000059608189, 1.0000000298035034,
    1.0000000149015549, 1.0000000074507118, 1.000000003725334,
    1.0000000018626598, 1.0000000009313275, 1.0000000004656628,
    1.000000000232831, 1.0000000001164155, 1.0000000000582077,
    1.0000000000291038, 1.000000000014552, 1.000000000007276,
    1.000000000003638, 1.000000000001819, 1.0000000000009095,
    1.0000000000004547, 1.0000000000002274, 1.0000000000001137,
    1.0000000000000568, 1.0000000000000284, 1.0000000000000142,
    1.000000000000007, 1.0000000000000036, 1.0000000000000018,
    1.0000000000000009, 1.0000000000000004, 1.0000000000000002,
    1.0000000000000002, 1.0, 1.0,
    1.0, 1.0, 1.0,
    1.0, 1.0, 1.0,
)

_BOUNDARY_RTOL = 1e-13


def _lgamma1p_small(z: float) -> float:
    """ln Gamma(1 + z) for |z| <= 1/2 via its zeta-coefficient Taylor series."""
    acc = 0.0
    for m in range(len(_ZETA) + 1, 1, -1):
        acc = acc * z + (-1) ** m * _ZETA[m - 2] / m
    return z * (-_EULER_GAMMA + z * acc)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Near the zeros of ln Gamma (x = 1 and x = 2) a series is used so the
    *relative* error stays at the 1e-14 level; elsewhere ``math.lgamma``.
    """
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    if 0.5 <= x < 1.5:
        return _lgamma1p_small(x - 1.0)
    if 1.5 <= x <= 2.5:
        return math.log1p(x - 2.0) + _lgamma1p_small(x - 2.0)
    return math.lgamma(x)


def log_unit_sphere_area(d: int) -> float:
    return math.log(2.0) + 0.5 * d * math.log(math.pi) - log_gamma(0.5 * d)


def unit_sphere_area(d: int) -> float:
    """Area of the unit sphere S^{d-1} in R^d, i.e. 2 pi^{d/2} / Gamma(d/2)."""
    if int(d) != d or d < 1:
        raise ValueError(f"unit_sphere_area needs an integer d >= 1, got {d!r}")
    return math.exp(log_unit_sphere_area(int(d)))


@dataclass(frozen=True)
class Geometry:
    """Ambient dimension ``n``, plane dimension ``k`` and sub-plane dimension ``j``.

    ``j = 0`` is the plain k-plane setting.
    """

    n: int
    k: int
    j: int = 0

    def __post_init__(self) -> None:
        for name in ("n", "k", "j"):
            v = getattr(self, name)
            if int(v) != v:
                raise ContractError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.n < 2:
            raise ContractError(f"need n >= 2, got n={self.n}")
        if not 0 <= self.j < self.k < self.n:
            raise ContractError(
                f"need 0 <= j < k < n, got (n, k, j) = ({self.n}, {self.k}, {self.j})"
            )


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentProfile:
    """Lebesgue exponent ``p`` with weight exponent ``mu`` and optional target ``nu``.

    ``p`` may be ``math.inf`` (or the string ``"inf"``). ``nu`` is checked
    against the scaling relation of the operator it is used with.
    """

    p: float
    mu: float
    nu: float | None = None

    def __post_init__(self) -> None:
        p = self.p
        if isinstance(p, str):
            if p.strip().lower() not in ("inf", "infinity", "∞"):
                raise ContractError(f"unrecognised exponent {p!r}")
            p = math.inf
        p = float(p)
        if not p >= 1.0:
            raise ContractError(f"need 1 <= p <= inf, got p={p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "mu", float(self.mu))
        if self.nu is not None:
            object.__setattr__(self, "nu", float(self.nu))

    @property
    def p_prime(self) -> float:
        return conjugate_exponent(self.p)

    @property
    def inv_p(self) -> float:
        if math.isinf(self.p):
            return 0.0
        return 1.0 / self.p

    @property
    def inv_p_prime(self) -> float:
        if math.isinf(self.p):
            return 1.0
        if self.p == 1.0:
            return 0.0
        return 1.0 - 1.0 / self.p


def forced_nu(geom: Geometry, exps: ExponentProfile, setting: Setting) -> float:
    """Target weight exponent dictated by dilation invariance."""
    d = geom.k - geom.j if setting.endswith("jk") else geom.k
    if setting.startswith("forward"):
        return exps.mu - d * exps.inv_p_prime
    if setting.startswith("dual"):
        return exps.mu - d * exps.inv_p
    raise ContractError(f"unknown setting {setting!r}")


def _check_nu(geom: Geometry, exps: ExponentProfile, setting: Setting) -> None:
    if exps.nu is None:
        return
    want = forced_nu(geom, exps, setting)
    if abs(exps.nu - want) > 1e-12 * max(1.0, abs(want)):
        raise ContractError(
            f"nu={exps.nu} is inconsistent with the scaling relation for "
            f"{setting} (expected nu={want})"
        )


def _at_boundary(value: float, bound: float) -> bool:
    return abs(value - bound) <= _BOUNDARY_RTOL * max(1.0, abs(bound))


def _lower_bound(value: float, bound: float, what: str) -> Divergent | None:
    """Open constraint ``value > bound``; None if satisfied."""
    if _at_boundary(value, bound):
        return Divergent(f"{what} is at its boundary: {value!r} == {bound!r}")
    if value < bound:
        raise AdmissibilityError(f"inadmissible: need {what} > {bound!r}, got {value!r}")
    return None


def _upper_bound(value: float, bound: float, what: str) -> Divergent | None:
    """Open constraint ``value < bound``; None if satisfied."""
    if _at_boundary(value, bound):
        return Divergent(f"{what} is at its boundary: {value!r} == {bound!r}")
    if value > bound:
        raise AdmissibilityError(f"inadmissible: need {what} < {bound!r}, got {value!r}")
    return None


def _log_gamma_ratio(a: float, b: float) -> float:
    return log_gamma(a) - log_gamma(b)


def lambda_mu(geom: Geometry, mu: float) -> float | Divergent:
    """Multiplier of the weighted L^1 identity for the k-plane transform.

    Equals Gamma((n-k+mu)/2) Gamma(n/2) / (Gamma((n+mu)/2) Gamma((n-k)/2)),
    defined for mu > k - n.
    """
    return lambda_jk(Geometry(geom.n, geom.k), mu)


def lambda_jk(geom: Geometry, mu: float) -> float | Divergent:
    n, k, j = geom.n, geom.k, geom.j
    div = _lower_bound(mu, k - n, "mu (k - n)")
    if div is not None:
        return div
    log_val = _log_gamma_ratio(0.5 * (n - k + mu), 0.5 * (n + mu - j)) + _log_gamma_ratio(
        0.5 * (n - j), 0.5 * (n - k)
    )
    return math.exp(log_val)


def lambda_mu_dual(k: int, mu: float) -> float | Divergent:
    """pi^{k/2} Gamma(-mu/2) / Gamma((k-mu)/2), defined for mu < 0."""
    div = _upper_bound(mu, 0.0, "mu (0)")
    if div is not None:
        return div
    return math.exp(0.5 * k * math.log(math.pi) + _log_gamma_ratio(-0.5 * mu, 0.5 * (k - mu)))


def lambda_jk_dual(geom: Geometry, mu: float) -> float | Divergent:
    return lambda_mu_dual(geom.k - geom.j, mu)


def _log_norm_jk(geom: Geometry, inv_p: float, inv_pp: float, mu: float) -> float:
    n, k, j = geom.n, geom.k, geom.j
    log_area = log_unit_sphere_area(n - k) - log_unit_sphere_area(n - j)
    a = 0.5 * (mu + n * inv_p - k + j * inv_pp)
    b = 0.5 * (mu + n * inv_p - j * inv_p)
    return 0.5 * (k - j) * math.log(math.pi) + inv_p * log_area + _log_gamma_ratio(a, b)


def sharp_norm_Rk(geom: Geometry, exps: ExponentProfile) -> float | Divergent:
    """Operator norm of R_k from L^p_mu(R^n) to L^p_nu of the affine Grassmannian."""
    return sharp_norm_Rjk(Geometry(geom.n, geom.k), exps, _setting="forward-k")


def sharp_norm_Rjk(
    geom: Geometry, exps: ExponentProfile, _setting: Setting = "forward-jk"
) -> float | Divergent:
    _check_nu(geom, exps, _setting)
    n, k, j = geom.n, geom.k, geom.j
    bound = k - n * exps.inv_p - j * exps.inv_p_prime
    div = _lower_bound(exps.mu, bound, "mu (k - n/p - j/p')")
    if div is not None:
        return div
    return math.exp(_log_norm_jk(geom, exps.inv_p, exps.inv_p_prime, exps.mu))


def _forward_profile_of_dual(geom: Geometry, exps: ExponentProfile) -> ExponentProfile:
    # norms of R: L^{p'}_{-nu} -> L^{p'}_{-mu} and of its dual coincide
    nu = forced_nu(geom, exps, "dual-jk")
    return ExponentProfile(exps.p_prime, -nu, -exps.mu)


def sharp_norm_Rk_dual(geom: Geometry, exps: ExponentProfile) -> float | Divergent:
    """Operator norm of the dual k-plane transform on L^p_mu of the Grassmannian."""
    return sharp_norm_Rjk_dual(Geometry(geom.n, geom.k), exps, _setting="dual-k")


def sharp_norm_Rjk_dual(
    geom: Geometry, exps: ExponentProfile, _setting: Setting = "dual-jk"
) -> float | Divergent:
    _check_nu(geom, exps, _setting)
    bound = (geom.n - geom.k) * exps.inv_p_prime
    div = _upper_bound(exps.mu, bound, "mu ((n-k)/p')")
    if div is not None:
        return div
    fwd = _forward_profile_of_dual(geom, exps)
    return math.exp(_log_norm_jk(geom, fwd.inv_p, fwd.inv_p_prime, fwd.mu))


def dual_jk_displayed_form(geom: Geometry, exps: ExponentProfile) -> float | Divergent:
    """The j->k forward-norm expression evaluated at the *dual's* (p, mu).

    Kept only for comparison with :func:`sharp_norm_Rjk_dual`; it does not
    reduce to the dual k-plane constant at j = 0.
    Nonpositive Gamma arguments give :class:`Divergent`.
    """
    n, k, j = geom.n, geom.k, geom.j
    a = 0.5 * (exps.mu + n * exps.inv_p - k + j * exps.inv_p_prime)
    b = 0.5 * (exps.mu + n * exps.inv_p - j * exps.inv_p)
    if a <= 0.0 or b <= 0.0:
        return Divergent(f"Gamma argument nonpositive (a={a}, b={b})")
    return math.exp(_log_norm_jk(geom, exps.inv_p, exps.inv_p_prime, exps.mu))


@dataclass(frozen=True)
class AdmissibilityReport:
    setting: str
    nu: float
    bounded: bool
    finite_ae: bool | None
    bound: str

    @property
    def verdict(self) -> str:
        if self.bounded:
            return "admissible"
        return f"inadmissible: {self.bound}"


def validate_parameters(
    geom: Geometry, exps: ExponentProfile, setting: Setting
) -> AdmissibilityReport:
    """Classify (geom, exps) for one operator setting; never raises on bad mu.

    ``finite_ae`` is the almost-everywhere finiteness range of the forward
    transforms, which at p = 1 includes mu = k - n where boundedness fails.
    For dual settings the finiteness range is not characterised (None).
    """
    if setting not in SETTINGS:
        raise ContractError(f"unknown setting {setting!r}")
    n, k, j = geom.n, geom.k, geom.j
    mu = exps.mu
    nu = forced_nu(geom, exps, setting)
    if setting.startswith("forward"):
        jj = j if setting == "forward-jk" else 0
        lo = k - n * exps.inv_p - jj * exps.inv_p_prime
        bounded = mu > lo and not _at_boundary(mu, lo)
        if exps.p == 1.0:
            finite = mu > k - n or _at_boundary(mu, k - n)
        else:
            finite = bounded
        desc = "mu <= k - n/p" if jj == 0 else "mu <= k - n/p - j/p'"
        return AdmissibilityReport(setting, nu, bounded, finite, desc)
    hi = (n - k) * exps.inv_p_prime
    bounded = mu < hi and not _at_boundary(mu, hi)
    return AdmissibilityReport(setting, nu, bounded, None, "mu >= (n - k)/p'")


def sharp_norm(geom: Geometry, exps: ExponentProfile, setting: Setting) -> float | Divergent:
    """Dispatch to the sharp norm of ``setting``."""
    return {
        "forward-k": sharp_norm_Rk,
        "forward-jk": sharp_norm_Rjk,
        "dual-k": sharp_norm_Rk_dual,
        "dual-jk": sharp_norm_Rjk_dual,
    }[setting](geom, exps)
