"""One-dimensional and spherical quadrature rules.

``radial_integral`` is the adaptive half-line integrator used by every radial
reduction. It splits [0, inf) at known breakpoints, treats an algebraic
endpoint singularity at the origin with an algebraic-weight rule, integrates
wide panels in log r, and closes power-law tails analytically instead of
truncating them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate, special

from .results import Divergent, Estimate

_EXP_TOL = 1e-9
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tail:
    """Large-r behaviour of an integrand or profile.

    kind="power":    g(r) ~ C r^power (ln r)^log_power
    kind="gaussian": g(r) ~ C r^power exp(-rate r^2)
    kind="compact":  g(r) = 0 for r > radius
    """

    kind: str = "power"
    power: float = 0.0
    log_power: float = 0.0
    rate: float = 0.0
    radius: float = math.inf

    def __post_init__(self):
        if self.kind not in ("power", "gaussian", "compact"):
            raise ValueError(f"unknown tail kind {self.kind!r}")
        if self.kind == "gaussian" and not self.rate > 0:
            raise ValueError("gaussian tail needs rate > 0")
        if self.kind == "compact" and not 0 < self.radius < math.inf:
            raise ValueError("compact tail needs a finite positive radius")

    def shifted(self, power: float = 0.0, log_scale: float = 1.0) -> "Tail":
        """Tail of ``r^power * g(r)**log_scale`` (log_scale is the exponent p)."""
        if self.kind == "power":
            return Tail("power", self.power * log_scale + power, self.log_power * log_scale)
        if self.kind == "gaussian":
            return Tail("gaussian", self.power * log_scale + power, rate=self.rate * log_scale)
        return self


# ---------------------------------------------------------------------------
# fixed rules


@lru_cache(maxsize=256)
def _jacobi_ref(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    if alpha == 0.0 and beta == 0.0:
        x, w = np.polynomial.legendre.leggauss(n)
    else:
        x, w = special.roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def jacobi_panel(a: float, b: float, n: int, left_power: float = 0.0, right_power: float = 0.0):
    """Nodes and weights on [a, b] for integrands with algebraic endpoint behaviour.

    The rule is Gauss-Jacobi for (x-a)^left_power (b-x)^right_power, but the
    returned weights are divided by that factor, so ``sum(w * G(x))``
    approximates the plain integral of ``G`` when ``G`` carries the
    singular factors itself.
    """
    y, wy = _jacobi_ref(int(n), float(right_power), float(left_power))
    h = 0.5 * (b - a)
    x = a + h * (y + 1.0)
    w = wy * h ** (1.0 + left_power + right_power)
    if left_power:
        w = w / (h * (1.0 + y)) ** left_power
    if right_power:
        w = w / (h * (1.0 - y)) ** right_power
    return x, w


def sphere_rule(d: int, order: int, rng: np.random.Generator | None = None, samples: int = 0):
    """Nodes (m, d) and weights (m,) for integration over S^{d-1}.

    Product rules for d <= 4 (Gauss-Jacobi in the first coordinate, recursive
    on the remaining sphere); uniform Monte Carlo with equal weights for
    d > 4, which requires ``rng`` and ``samples``.
    """
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if d == 2:
        m = 2 * order
        ang = 2.0 * np.pi * np.arange(m) / m
        return np.column_stack([np.cos(ang), np.sin(ang)]), np.full(m, 2.0 * np.pi / m)
    if d <= 4:
        half = 0.5 * (d - 3)
        x, wx = _jacobi_ref(order, half, half)
        sub, wsub = sphere_rule(d - 1, order)
        rad = np.sqrt(1.0 - x * x)
        nodes = np.concatenate(
            [np.column_stack([np.full(len(sub), xi), ri * sub]) for xi, ri in zip(x, rad)]
        )
        return nodes, np.outer(wx, wsub).ravel()
    if rng is None or samples <= 0:
        raise ValueError("Monte Carlo sphere rule needs rng and samples > 0")
    z = rng.standard_normal((samples, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    area = 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)
    return z, np.full(samples, area / samples)


# ---------------------------------------------------------------------------
# adaptive half-line integration


def _quad(g, a, b, epsrel, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(g, a, b, epsabs=0.0, epsrel=epsrel, limit=400, **kw)
    return val, err


def _segment(g, a, b, epsrel, left_power=0.0, at_origin=False):
    if at_origin and abs(left_power) > _EXP_TOL and left_power != round(left_power):
        lp = left_power
        nudge = max(1e-13 * (b - a), 8.0 * _EPS * abs(a))
        return _quad(lambda r: g(max(r, a + nudge)) / (max(r, a + nudge) - a) ** lp, a, b, epsrel,
                     weight="alg", wvar=(lp, 0.0))
    if a > 0 and b / a > 16.0:
        return _quad(lambda x: g(math.exp(x)) * math.exp(x), math.log(a), math.log(b), epsrel)
    return _quad(g, a, b, epsrel)


def interval_integral(
    g: Callable[[float], float],
    a: float,
    b: float,
    *,
    left_power: float = 0.0,
    right_power: float = 0.0,
    breakpoints=(),
    epsrel: float = 1e-11,
) -> Estimate:
    """Integral of ``g`` over [a, b] where g ~ (x-a)^left_power, g ~ (b-x)^right_power.

    The singular factors stay inside ``g``; algebraic-weight rules absorb them
    on the end panels.
    """
    edges = [a] + sorted(x for x in breakpoints if a < x < b) + [b]
    if abs(right_power) > _EXP_TOL and edges[-2] > 0 and b / edges[-2] > 16.0:
        # keep the weighted end panel short; the wide remainder goes through log r
        edges.insert(-1, 0.5 * (edges[-2] + b))
    total = err = 0.0
    last = len(edges) - 2
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        lp = left_power if i == 0 and abs(left_power) > _EXP_TOL else 0.0
        rp = right_power if i == last and abs(right_power) > _EXP_TOL else 0.0
        nudge = max(1e-13 * (hi - lo), 8.0 * _EPS * max(abs(lo), abs(hi)))
        if hi - lo <= 4.0 * nudge:
            continue
        if lp or rp:
            def h(x, lo=lo, hi=hi, lp=lp, rp=rp, nudge=nudge):
                # the weighted rule samples the endpoints; take the smooth factor just inside
                x = min(max(x, lo + nudge), hi - nudge)
                return g(x) / ((x - lo) ** lp * (hi - x) ** rp)

            v, e = _quad(h, lo, hi, epsrel, weight="alg", wvar=(lp, rp))
        elif lo > 0 and hi / lo > 16.0:
            v, e = _quad(lambda y: g(math.exp(y)) * math.exp(y), math.log(lo), math.log(hi), epsrel)
        else:
            v, e = _quad(g, lo, hi, epsrel)
        total += v
        err += e
    return Estimate(total, err)


def _tail_factor(R: float, power: float, log_power: float, epsrel: float) -> float:
    """int_R^inf (r/R)^power (ln r / ln R)^log_power dr."""
    c = -(power + 1.0)
    if abs(log_power) <= _EXP_TOL:
        return R / c
    L = math.log(R)
    val, _ = _quad(lambda y: math.exp(-c * y) * (1.0 + y / L) ** log_power, 0.0, math.inf, epsrel)
    return R * val


_TAIL_STEP = 1e6
_TAIL_CAP = 1e200


def _two_term_tail(g, R: float, power: float, noise: float = 1e-13):
    """Fit g ~ r^power (A + B r^-c) at R, 4R, 16R.

    Returns (int_R^inf of the model, relative size B R^-c / A of the
    correction at R), or None when the samples admit no consistent c > 0.
    Differences below ``noise`` (relative) count as a pure power law.
    """
    rs = (R, 4.0 * R, 16.0 * R)
    try:
        y = [g(r) * math.exp(-power * math.log(r)) for r in rs]
    except OverflowError:
        return None
    if not all(math.isfinite(v) for v in y):
        return None
    d1, d2 = y[0] - y[1], y[1] - y[2]
    scale = max(abs(v) for v in y)
    if scale == 0.0:
        return 0.0, 0.0
    if abs(d1) <= noise * scale and abs(d2) <= noise * scale:
        return y[2] * R ** (power + 1.0) / -(power + 1.0), 0.0
    q = d2 / d1
    if not 0.0 < q < 1.0:
        return None
    c = -math.log(q) / math.log(4.0)
    B = d1 / (R**-c * (1.0 - q))
    A = y[2] - B * (16.0 * R) ** -c
    if A == 0.0:
        return None
    val = A * R ** (power + 1.0) / -(power + 1.0) + B * R ** (power + 1.0 - c) / (c - power - 1.0)
    return val, B * R**-c / A


def _tail_power_integral(g, R: float, tail: Tail, epsrel: float) -> tuple[float, float]:
    """Completion of int_R^inf g for a power-law tail.

    Integrands often approach their power law through a slowly decaying
    algebraic correction (images of truncated powers do). Without a log
    factor a two-term model r^a (A + B r^-c) is fitted; while the fitted
    correction is still above ``epsrel`` the integral is carried outward
    numerically (in log r) before the model closes it. A second fit at
    2R gives the error estimate. With a log factor, or when no two-term
    model fits, a single-term model fitted at R and 4R is used.
    """
    if abs(tail.log_power) <= _EXP_TOL:
        walked, werr = 0.0, 0.0
        noise = max(1e-13, 10.0 * epsrel)
        while True:
            fit = _two_term_tail(g, R, tail.power, noise)
            if fit is None and R * _TAIL_STEP >= _TAIL_CAP:
                break
            t1, corr = fit if fit is not None else (0.0, math.inf)
            if abs(corr) > epsrel and R * _TAIL_STEP < _TAIL_CAP:
                v, e = _quad(lambda x: g(math.exp(x)) * math.exp(x), math.log(R),
                             math.log(R * _TAIL_STEP), epsrel)
                walked += v
                werr += e
                R *= _TAIL_STEP
                if walked != 0.0 and abs(v) <= 1e-3 * epsrel * abs(walked) and tail.power < -1.0:
                    # the remainder is below the integrand's own accuracy
                    return walked, werr + abs(v)
                continue
            fit2 = _two_term_tail(g, 2.0 * R, tail.power, noise)
            if fit2 is None:
                break
            mid, mid_err = _segment(g, R, 2.0 * R, epsrel)
            t2 = fit2[0] + mid
            return walked + t2, werr + abs(t2 - t1) + mid_err
        tail_start = R
    else:
        walked, werr, tail_start = 0.0, 0.0, R
    R = tail_start
    t1 = g(R) * _tail_factor(R, tail.power, tail.log_power, epsrel)
    mid, mid_err = _segment(g, R, 4.0 * R, epsrel)
    t2 = mid + g(4.0 * R) * _tail_factor(4.0 * R, tail.power, tail.log_power, epsrel)
    return walked + t2, werr + abs(t2 - t1) + mid_err


def divergence_reason(tail: Tail, lower_power: float) -> str | None:
    if lower_power <= -1.0 + _EXP_TOL:
        return f"integrand ~ r^{lower_power:g} is not integrable at the origin"
    if tail.kind == "power":
        a, b = tail.power, tail.log_power
        if a > -1.0 + _EXP_TOL:
            return f"integrand ~ r^{a:g} is not integrable at infinity"
        if abs(a + 1.0) <= _EXP_TOL and b >= -1.0 - _EXP_TOL:
            return f"integrand ~ r^-1 (log r)^{b:g} is not integrable at infinity"
    return None


def radial_integral(
    g: Callable[[float], float],
    *,
    tail: Tail,
    lower_power: float = 0.0,
    breakpoints=(),
    scale: float = 1.0,
    epsrel: float = 1e-11,
    truncation: float = 1e4,
    upper: float | None = None,
    lower: float = 0.0,
) -> Estimate | Divergent:
    """Integral of ``g`` over [lower, upper) (upper=None means infinity).

    ``lower_power`` is the exponent of g at ``lower`` (g ~ (r-lower)^lower_power),
    ``tail`` its large-r behaviour. A structurally non-integrable integrand
    returns :class:`Divergent`; ``upper`` given means a plain partial
    integral with no tail handling and no divergence test at infinity.
    """
    if upper is None:
        why = divergence_reason(tail, lower_power)
        if why is not None:
            return Divergent(why)
    elif lower_power <= -1.0 + _EXP_TOL:
        return Divergent(f"integrand ~ r^{lower_power:g} is not integrable at the origin")

    bps = sorted(float(b) for b in breakpoints if b > lower)
    ref = max([scale] + bps)
    tail_part = (0.0, 0.0)
    if upper is not None:
        end = float(upper)
    elif tail.kind == "compact":
        end = tail.radius
    elif tail.kind == "gaussian":
        end = lower + ref + math.sqrt((max(tail.power, 0.0) + 80.0) / tail.rate)
    else:
        end = lower + truncation * ref
        if abs(tail.log_power) > _EXP_TOL:
            end = max(end, 1e3)
        tail_part = _tail_power_integral(g, end, tail, epsrel)

    pts = [lower] + [b for b in bps if b < end]
    if lower + scale < end and all(abs(lower + scale - b) > 1e-12 * ref for b in pts):
        pts.append(lower + scale)
    pts = sorted(set(pts)) + [end]

    total, err = tail_part
    for i, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
        if b <= a:
            continue
        v, e = _segment(g, a, b, epsrel, left_power=lower_power, at_origin=(i == 0))
        total += v
        err += e
    return Estimate(total, err)
