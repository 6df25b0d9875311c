"""Radial profiles and the exact one-dimensional reductions of the transforms.

For f(x) = f0(|x|) the k-plane transform depends only on t = |tau|::

    (R_k f)(t) = sigma_{k-1} int_t^inf f0(r) (r^2 - t^2)^{k/2 - 1} r dr
               = sigma_{k-1} int_0^inf f0(sqrt(t^2 + s^2)) s^{k-1} ds,

and the second form (used here) has no endpoint singularity. The j->k
transform is the same with k replaced by k - j. For radial phi on k-planes,
the dual transform at |x| = s averages phi0(s t) against the law of the
distance from a unit vector to a Haar-random k-subspace:
t^{n-k-1} (1 - t^2)^{k/2 - 1} on [0, 1], normalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from .constants import Geometry, log_gamma, unit_sphere_area
from .geometry import QuadratureSpec
from .quadrature import Tail, interval_integral, radial_integral
from .results import AccuracyError, ContractError, Divergent, Estimate

_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """A function f0 of the radius r >= 0 with the metadata quadrature needs.

    ``a0``: f0 ~ r^a0 near the origin (ignored if ``support_min`` > 0).
    ``tail``: large-r behaviour. ``support_min``: f0 vanishes below it.
    ``breakpoints``: radii where f0 is not smooth. ``scale``: characteristic
    length, used to place panels so that dilated profiles are integrated
    on exactly dilated panels.
    """

    scalar: Callable[[float], float]
    a0: float = 0.0
    tail: Tail = Tail("power", 0.0)
    support_min: float = 0.0
    breakpoints: tuple = ()
    scale: float = 1.0
    family: str = "custom"
    params: dict = field(default_factory=dict)
    vector: Callable | None = None
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(sorted(float(b) for b in self.breakpoints)))
        if self.check and self.tail.kind == "power":
            self._check_tail()

    def _check_tail(self):
        rs = np.logspace(3, 6, 13) * max(self.scale, 1.0)
        vals = np.array([abs(self.scalar(float(r))) for r in rs])
        if not np.all(np.isfinite(vals)):
            raise ContractError(f"profile {self.family} is not finite on [1e3, 1e6]")
        if np.all(vals == 0.0):
            return
        model = rs**self.tail.power * np.log(rs) ** self.tail.log_power
        ratio = vals / model
        if np.any(ratio == 0.0) or ratio.max() / ratio.min() > 2.0:
            raise ContractError(
                f"tail metadata r^{self.tail.power} (log r)^{self.tail.log_power} does not "
                f"match profile {self.family} on [1e3, 1e6]"
            )

    def __call__(self, r):
        if np.ndim(r) == 0:
            return self.scalar(float(r))
        if self.vector is not None:
            return self.vector(np.asarray(r, dtype=float))
        return np.array([self.scalar(float(x)) for x in np.ravel(r)]).reshape(np.shape(r))

    def describe(self) -> dict:
        return {"family": self.family, **self.params}

    def dilate(self, lam: float) -> "RadialProfile":
        """The profile r -> f0(lam r)."""
        lam = float(lam)
        f, vec = self.scalar, self.vector
        tail = self.tail
        if tail.kind == "gaussian":
            tail = replace(tail, rate=tail.rate * lam * lam)
        elif tail.kind == "compact":
            tail = replace(tail, radius=tail.radius / lam)
        return RadialProfile(
            lambda r: f(lam * r),
            a0=self.a0,
            tail=tail,
            support_min=self.support_min / lam,
            breakpoints=tuple(b / lam for b in self.breakpoints),
            scale=self.scale / lam,
            family="dilate",
            params={"base": self.describe(), "lam": lam},
            vector=(lambda r: vec(lam * r)) if vec is not None else None,
            check=False,
        )


# ---------------------------------------------------------------------------
# built-in families


def gaussian(rate: float = 1.0) -> RadialProfile:
    rate = float(rate)
    return RadialProfile(
        lambda r: math.exp(-rate * r * r),
        tail=Tail("gaussian", 0.0, rate=rate),
        scale=1.0 / math.sqrt(rate),
        family="gaussian",
        params={"rate": rate},
        vector=lambda r: np.exp(-rate * r * r),
    )


def gaussian_power(alpha: float, rate: float = 1.0) -> RadialProfile:
    """r^alpha exp(-rate r^2)."""
    alpha, rate = float(alpha), float(rate)
    return RadialProfile(
        lambda r: r**alpha * math.exp(-rate * r * r) if r > 0 else (1.0 if alpha == 0 else (0.0 if alpha > 0 else math.inf)),
        a0=alpha,
        tail=Tail("gaussian", alpha, rate=rate),
        scale=1.0 / math.sqrt(rate),
        family="gaussian_power",
        params={"alpha": alpha, "rate": rate},
        vector=lambda r: r**alpha * np.exp(-rate * r * r),
    )


def truncated_power(exponent: float, cutoff: float = 1.0) -> RadialProfile:
    """0 for r < cutoff, r^exponent for r > cutoff."""
    a, c = float(exponent), float(cutoff)
    return RadialProfile(
        lambda r: r**a if r > c else 0.0,
        tail=Tail("power", a),
        support_min=c,
        breakpoints=(c,),
        scale=c,
        family="truncated_power",
        params={"exponent": a, "cutoff": c},
        vector=lambda r: np.where(r > c, np.maximum(r, c) ** a, 0.0),
    )


def extremizer(mu: float, n: int, p: float, eps: float, j: int = 0) -> RadialProfile:
    """Truncated power r^{-mu-(n-j)/p-eps} on r > 1 (approximate extremals)."""
    prof = truncated_power(-mu - (n - j) / p - eps, 1.0)
    return replace(prof, family="extremizer", params={"mu": mu, "n": n, "p": p, "eps": eps, "j": j})


def _log_counterexample(mu: float, q: float, inv_p: float, delta: float, family: str, params: dict):
    # r^{-mu} (2+r)^{-q} / log^{1/p+delta}(2+r)
    lp = inv_p + delta

    def f(r):
        if r == 0.0:
            return math.inf if mu > 0 else (0.0 if mu < 0 else 2.0**-q / math.log(2.0) ** lp)
        return r**-mu * (2.0 + r) ** -q / math.log(2.0 + r) ** lp

    return RadialProfile(
        f,
        a0=-mu,
        tail=Tail("power", -mu - q, -lp),
        family=family,
        params=params,
        vector=lambda r: r**-mu * (2.0 + r) ** -q / np.log(2.0 + r) ** lp,
    )


def counterexample(mu: float, n: int, p: float, delta: float) -> RadialProfile:
    """|x|^{-mu} (2+|x|)^{-n/p} / log^{1/p+delta}(2+|x|)."""
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    return _log_counterexample(mu, n * inv_p, inv_p, delta, "counterexample",
                               {"mu": mu, "n": n, "p": p, "delta": delta})


def jk_counterexample(mu: float, n: int, j: int, p: float, delta: float) -> RadialProfile:
    """|z|^{-mu} (2+|z|)^{(j-n)/p} / log^{1/p+delta}(2+|z|)."""
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    return _log_counterexample(mu, (n - j) * inv_p, inv_p, delta, "jk_counterexample",
                               {"mu": mu, "n": n, "j": j, "p": p, "delta": delta})


def endpoint_p1(k: int, delta: float) -> RadialProfile:
    """0 for r < 10, r^{-k-delta} otherwise: in L^1_{k-n} but with a non-integrable image."""
    prof = truncated_power(-k - delta, 10.0)
    return replace(prof, family="endpoint_p1", params={"k": k, "delta": delta})


def power_tail(alpha: float, beta: float) -> RadialProfile:
    """r^alpha (1 + r^2)^{-beta/2}."""
    a, b = float(alpha), float(beta)

    def f(r):
        if r == 0.0:
            return 1.0 if a == 0 else (0.0 if a > 0 else math.inf)
        return r**a * (1.0 + r * r) ** (-0.5 * b)

    return RadialProfile(
        f, a0=a, tail=Tail("power", a - b), family="power_tail", params={"alpha": a, "beta": b},
        vector=lambda r: r**a * (1.0 + r * r) ** (-0.5 * b),
    )


def indicator(radius: float = 1.0) -> RadialProfile:
    R = float(radius)
    return RadialProfile(
        lambda r: 1.0 if r < R else 0.0,
        tail=Tail("compact", radius=R),
        breakpoints=(R,),
        scale=R,
        family="indicator",
        params={"radius": R},
        vector=lambda r: np.where(r < R, 1.0, 0.0),
    )


def shell(inner: float = 1.0, outer: float = 2.0) -> RadialProfile:
    """((r - inner)(outer - r))^2 on [inner, outer], zero elsewhere."""
    r1, r2 = float(inner), float(outer)

    def f(r):
        return ((r - r1) * (r2 - r)) ** 2 if r1 < r < r2 else 0.0

    return RadialProfile(
        f, tail=Tail("compact", radius=r2), support_min=r1, breakpoints=(r1, r2),
        scale=r2 - r1, family="shell", params={"inner": r1, "outer": r2},
        vector=lambda r: np.where((r > r1) & (r < r2), ((r - r1) * (r2 - r)) ** 2, 0.0),
    )


def zero() -> RadialProfile:
    return RadialProfile(lambda r: 0.0, tail=Tail("compact", radius=1.0), family="zero",
                         vector=lambda r: np.zeros_like(r))


def _combine_tails(tails: list[Tail]) -> Tail:
    powers = [t for t in tails if t.kind == "power"]
    if powers:
        top = max(powers, key=lambda t: (t.power, t.log_power))
        return top
    gauss = [t for t in tails if t.kind == "gaussian"]
    if gauss:
        rate = min(t.rate for t in gauss)
        return Tail("gaussian", max(t.power for t in gauss if t.rate == rate), rate=rate)
    return Tail("compact", radius=max(t.radius for t in tails))


def mixture(terms: list[dict]) -> RadialProfile:
    """Weighted sum of profiles: ``[{"weight": w, "family": ..., **params}, ...]``."""
    parts = []
    for term in terms:
        term = dict(term)
        w = float(term.pop("weight", 1.0))
        parts.append((w, make_profile(**term)))
    scalars = [(w, p.scalar) for w, p in parts]
    vectors = [(w, p.vector) for w, p in parts]
    supp = min(p.support_min for _, p in parts)
    a0 = min(p.a0 for _, p in parts if p.support_min == supp)
    bps = sorted({b for _, p in parts for b in p.breakpoints} | {p.support_min for _, p in parts if p.support_min > 0})
    vec = None
    if all(v is not None for _, v in vectors):
        vec = lambda r: sum(w * v(r) for w, v in vectors)  # noqa: E731
    return RadialProfile(
        lambda r: sum(w * f(r) for w, f in scalars),
        a0=a0,
        tail=_combine_tails([p.tail for _, p in parts]),
        support_min=supp,
        breakpoints=tuple(bps),
        scale=float(np.exp(np.mean([np.log(p.scale) for _, p in parts]))),
        family="mixture",
        params={"terms": [dict(t) for t in terms]},
        vector=vec,
        check=False,
    )


FAMILIES: dict[str, Callable[..., RadialProfile]] = {
    "gaussian": gaussian,
    "gaussian_power": gaussian_power,
    "truncated_power": truncated_power,
    "extremizer": extremizer,
    "counterexample": counterexample,
    "jk_counterexample": jk_counterexample,
    "endpoint_p1": endpoint_p1,
    "power_tail": power_tail,
    "indicator": indicator,
    "shell": shell,
    "zero": zero,
    "mixture": mixture,
}


def make_profile(family: str, **params) -> RadialProfile:
    """Build a profile from its ``describe()`` dictionary."""
    if family == "dilate":
        return make_profile(**params["base"]).dilate(params["lam"])
    if family == "image":
        src = make_profile(**params["source"])
        geom = Geometry(params["n"], params["k"], params.get("j", 0))
        return image_profile(src, geom, params["op"])
    if family not in FAMILIES:
        raise ContractError(f"unknown profile family {family!r}; known: {sorted(FAMILIES)}")
    return FAMILIES[family](**params)


def parse_profile(text: str) -> RadialProfile:
    """Parse ``"family=extremizer, mu=1, n=2, p=2, eps=0.01"`` into a profile.

    A leading bare name is taken as the family: ``"gaussian, rate=2"``.
    """
    items = [s.strip() for s in text.replace(";", ",").split(",") if s.strip()]
    kv = {}
    if items and "=" not in items[0]:
        kv["family"] = items.pop(0)
    for item in items:
        if "=" not in item:
            raise ContractError(f"expected key=value, got {item!r}")
        key, val = (s.strip() for s in item.split("=", 1))
        kv[key] = val
    family = kv.pop("family", None)
    if family is None:
        raise ContractError("profile needs family=<name>")
    params = {}
    for key, val in kv.items():
        if val.lower() in ("inf", "infinity"):
            params[key] = math.inf
            continue
        try:
            num = float(val)
        except ValueError as exc:
            raise ContractError(f"parameter {key}={val!r} is not a number") from exc
        params[key] = int(num) if key in ("n", "k", "j") else num
    return make_profile(family, **params)


# ---------------------------------------------------------------------------
# transforms of radial functions


def _abel(profile: RadialProfile, d: int, t: float, spec: QuadratureSpec, upper=None):
    """sigma_{d-1} int_0^upper f0(sqrt(t^2 + s^2)) s^{d-1} ds."""
    t = float(t)
    if t < 0:
        raise ContractError("distance must be nonnegative")
    f = profile.scalar
    tt = t * t
    if d == 1:
        g = lambda s: f(math.sqrt(tt + s * s))  # noqa: E731
    else:
        g = lambda s: f(math.sqrt(tt + s * s)) * s ** (d - 1)  # noqa: E731
    if profile.support_min > 0 or t > 0:
        lower = d - 1.0
    else:
        lower = profile.a0 + d - 1.0
    tail = profile.tail
    if tail.kind == "compact":
        if tail.radius <= t:
            return Estimate(0.0, 0.0)
        tail = Tail("compact", radius=math.sqrt(tail.radius**2 - tt))
    else:
        tail = tail.shifted(power=d - 1.0)
    cuts = [c for c in profile.breakpoints + (profile.support_min,) if c > t]
    bps = [math.sqrt(c * c - tt) for c in cuts]
    if t > 0:
        bps.append(t)
    est = radial_integral(
        g, tail=tail, lower_power=lower, breakpoints=bps, scale=profile.scale,
        epsrel=spec.epsrel, truncation=spec.truncation_radius, upper=upper,
    )
    if isinstance(est, Divergent):
        return est
    c = unit_sphere_area(d)
    return Estimate(c * est.value, c * est.error)


def kplane_radial(profile: RadialProfile, geom: Geometry, t: float,
                  spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """(R_k f)(tau) at |tau| = t for f(x) = profile(|x|)."""
    return _abel(profile, geom.k, t, spec or QuadratureSpec())


def jk_radial(profile: RadialProfile, geom: Geometry, t: float,
              spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """(R_{j,k} f)(tau) at |tau| = t for f(zeta) = profile(|zeta|) on j-planes."""
    return _abel(profile, geom.k - geom.j, t, spec or QuadratureSpec())


def abel_partial(profile: RadialProfile, d: int, t: float, upper: float,
                 spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """The Abel-type integral with the s-integration truncated at ``upper``."""
    return _abel(profile, d, t, spec or QuadratureSpec(), upper=upper)


def _beta_average(profile: RadialProfile, N: int, K: int, s: float, spec: QuadratureSpec):
    """Average of phi0(s t) against the law of dist(unit vector, random K-subspace of R^N)."""
    s = float(s)
    if s < 0:
        raise ContractError("distance must be nonnegative")
    left = N - K - 1.0
    if profile.support_min == 0.0 and left + profile.a0 <= -1.0 + _TOL:
        return Divergent(f"phi0 ~ r^{profile.a0:g} is not integrable against t^{N - K - 1}")
    if s == 0.0:
        if profile.support_min > 0:
            return Estimate(0.0, 0.0)
        v = profile.scalar(0.0)
        if not math.isfinite(v):
            return Divergent("phi0 is singular at the origin")
        return Estimate(v, 0.0)
    log_c = math.log(2.0) + log_gamma(0.5 * N) - log_gamma(0.5 * K) - log_gamma(0.5 * (N - K))
    c = math.exp(log_c)
    f = profile.scalar
    half = 0.5 * K - 1.0
    # (1-t)(1+t) rather than 1-t^2: no cancellation next to t = 1
    g = lambda t: f(s * t) * t**left * ((1.0 - t) * (1.0 + t)) ** half  # noqa: E731
    lp = left + (profile.a0 if profile.support_min == 0.0 else 0.0)
    cuts = [b / s for b in profile.breakpoints + (profile.support_min,) if 0 < b < s]
    if profile.tail.kind == "compact" and profile.tail.radius < s:
        cuts.append(profile.tail.radius / s)
    # phi0(s t) lives on t ~ scale/s; resolve it with dyadic panels
    cuts += [profile.scale * 2.0**m / s for m in range(-3, 9) if profile.scale * 2.0**m < s]
    est = interval_integral(g, 0.0, 1.0, left_power=lp, right_power=half,
                            breakpoints=cuts, epsrel=spec.epsrel)
    return Estimate(c * est.value, c * est.error)


def dual_radial(profile: RadialProfile, geom: Geometry, s: float,
                spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """(R_k^* phi)(x) at |x| = s for phi(tau) = profile(|tau|)."""
    return _beta_average(profile, geom.n, geom.k, s, spec or QuadratureSpec())


def dual_jk_radial(profile: RadialProfile, geom: Geometry, s: float,
                   spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """(R_{j,k}^* phi)(zeta) at |zeta| = s for phi(tau) = profile(|tau|)."""
    return _beta_average(profile, geom.n - geom.j, geom.k - geom.j, s, spec or QuadratureSpec())


# ---------------------------------------------------------------------------
# images as profiles


def image_profile(profile: RadialProfile, geom: Geometry, op: str,
                  spec: QuadratureSpec | None = None) -> RadialProfile:
    """The transform of a radial function, itself as a (lazily evaluated) radial profile.

    ``op`` is one of "kplane", "jk", "dual", "dual_jk". The metadata of the
    image (behaviour at 0 and infinity, breakpoints) is derived from that of
    ``profile``.
    """
    spec = spec or QuadratureSpec()
    bps = tuple(sorted(set(profile.breakpoints) | ({profile.support_min} - {0.0})))
    if op in ("kplane", "jk"):
        d = geom.k if op == "kplane" else geom.k - geom.j
        fn = kplane_radial if op == "kplane" else jk_radial
        if profile.support_min > 0 or profile.a0 + d > _TOL:
            a0 = 0.0
        else:
            a0 = profile.a0 + d
        tail = profile.tail
        if tail.kind == "power":
            tail = Tail("power", tail.power + d, tail.log_power)
        support_min = 0.0
    elif op in ("dual", "dual_jk"):
        N, K = (geom.n, geom.k) if op == "dual" else (geom.n - geom.j, geom.k - geom.j)
        fn = dual_radial if op == "dual" else dual_jk_radial
        a0 = profile.a0 if profile.support_min == 0 else 0.0
        tail = profile.tail
        floor = -(N - K)
        if tail.kind != "power" or tail.power < floor - _TOL:
            tail = Tail("power", float(floor))
        elif abs(tail.power - floor) <= _TOL:
            tail = Tail("power", float(floor), tail.log_power + 1.0)
        support_min = profile.support_min
    else:
        raise ContractError(f"unknown transform {op!r}")

    @lru_cache(maxsize=8192)
    def scalar(t):
        v = fn(profile, geom, t, spec)
        if isinstance(v, Divergent):
            return math.inf
        return v.value

    return RadialProfile(
        scalar, a0=a0, tail=tail, support_min=support_min, breakpoints=bps,
        scale=profile.scale, family="image",
        params={"op": op, "source": profile.describe(), "n": geom.n, "k": geom.k, "j": geom.j},
        check=False,
    )


# ---------------------------------------------------------------------------
# weighted norms


def weighted_norm_radial(profile: RadialProfile, fiber_dim: int, p: float, weight: float,
                         spec: QuadratureSpec | None = None,
                         points_per_decade: int = 10_000) -> Estimate | Divergent:
    """(sigma_{d-1} int_0^inf r^{d-1+weight p} |f0|^p dr)^{1/p}, d = fiber_dim.

    This is the weighted L^p norm of a radial function on R^d, and also on an
    affine Grassmannian whose fibres have dimension d. For p = inf the
    supremum of r^weight |f0| is taken on a geometric grid and flagged
    approximate.
    """
    spec = spec or QuadratureSpec()
    d = int(fiber_dim)
    if profile.family == "zero":
        return Estimate(0.0, 0.0)
    if math.isinf(p):
        return _sup_norm(profile, weight, points_per_decade)
    p = float(p)
    if p < 1:
        raise ContractError("need p >= 1")
    f = profile.scalar
    power = d - 1.0 + weight * p
    if p == 1.0:
        g = lambda r: r**power * abs(f(r))  # noqa: E731
    else:
        g = lambda r: r**power * abs(f(r)) ** p  # noqa: E731
    lower = power + (p * profile.a0 if profile.support_min == 0 else 0.0)
    if profile.support_min > 0:
        lower = 0.0
    tail = profile.tail.shifted(power=power, log_scale=p)
    est = radial_integral(
        g, tail=tail, lower_power=lower, breakpoints=profile.breakpoints + (profile.support_min,),
        scale=profile.scale, epsrel=spec.epsrel, truncation=spec.truncation_radius,
        lower=0.0,
    )
    if isinstance(est, Divergent):
        return est
    c = unit_sphere_area(d)
    total = c * est.value
    if total < 0:
        raise AccuracyError("negative norm integral")
    if total == 0.0:
        return Estimate(0.0, c * est.error)
    val = total ** (1.0 / p)
    return Estimate(val, val * c * est.error / (p * total))


def _sup_norm(profile: RadialProfile, weight: float, points_per_decade: int) -> Estimate:
    lo = math.log10(profile.scale) - 6
    hi = math.log10(profile.scale) + 6
    rs = np.logspace(lo, hi, int((hi - lo) * points_per_decade) + 1)
    extra = np.array([b * (1 + e) for b in profile.breakpoints for e in (-1e-12, 1e-12)] or [rs[0]])
    rs = np.concatenate([rs, extra])
    vals = np.abs(np.asarray(profile(rs), dtype=float)) * rs**weight
    return Estimate(float(np.max(vals)), 0.0, approximate=True)


def weighted_norm_radial_source(profile: RadialProfile, n: int, p: float, mu: float,
                                spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """||f||_{p,mu} on R^n for f(x) = profile(|x|)."""
    return weighted_norm_radial(profile, n, p, mu, spec)


def weighted_norm_radial_target(profile: RadialProfile, geom: Geometry, p: float, nu: float,
                                spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """||phi||_{p,nu} on the affine k-plane Grassmannian for phi(tau) = profile(|tau|)."""
    return weighted_norm_radial(profile, geom.n - geom.k, p, nu, spec)


def weighted_moment(profile: RadialProfile, fiber_dim: int, power: float,
                    damping: float = 0.0, kappa: float = 1.0,
                    spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """sigma_{d-1} int_0^inf r^{d-1} r^power (kappa + r^2)^{-damping/2} f0(r) dr.

    With ``power = 0`` and ``kappa = 0`` the damping factor carries the whole
    weight; this covers every weight in the L^1 identities.
    """
    spec = spec or QuadratureSpec()
    d = int(fiber_dim)
    f = profile.scalar
    e = d - 1.0 + power
    if kappa == 0.0:
        e -= damping
        g = lambda r: r**e * f(r)  # noqa: E731
        extra_tail = 0.0
    else:
        g = lambda r: r**e * (kappa + r * r) ** (-0.5 * damping) * f(r)  # noqa: E731
        extra_tail = -damping
    lower = 0.0 if profile.support_min > 0 else e + profile.a0
    tail = profile.tail.shifted(power=e + extra_tail)
    est = radial_integral(
        g, tail=tail, lower_power=lower, breakpoints=profile.breakpoints + (profile.support_min,),
        scale=profile.scale, epsrel=spec.epsrel, truncation=spec.truncation_radius,
    )
    if isinstance(est, Divergent):
        return est
    c = unit_sphere_area(d)
    return Estimate(c * est.value, c * est.error)
