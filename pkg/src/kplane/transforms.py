"""Transforms of general (non-radial) functions.

Planes are handled in batches: an affine k-plane is a frame (n, k) with
orthonormal columns plus an offset (n,) orthogonal to it, and batched
routines take arrays of shape (m, n, k) and (m, n).

The k-plane transform uses the hemispherical form: for a plane at distance
r > 0 with unit normal direction e = u/r,

    (R_k f)(plane) = r^k int_{S^k_+} f(frame y(theta) + u) theta_{k+1}^{-k-1} d sigma(theta),
    y(theta) = r theta' / theta_{k+1},

where theta = (theta', theta_{k+1}). Panels in theta_{k+1} are placed at the
images of a dyadic grid of in-plane radii, so the rule adapts to both the
distance r and the envelope's length scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constants import Geometry, unit_sphere_area
from .geometry import (
    _NODE_BUDGET,
    AffinePlane,
    QuadratureSpec,
    frame_for_plane,
    haar_rotations,
    hemisphere_quadrature,
    hemisphere_rule,
    make_rng,
    _sphere_size,
    plane_distance,
)
from .quadrature import Tail, _jacobi_ref, radial_integral, sphere_rule
from .radial import RadialProfile, gaussian, make_profile, parse_profile, power_tail, zero
from .results import AccuracyError, ContractError, Divergent, Estimate

_ENVELOPE_SLACK = 1e-9


def _as_points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[None, :] if x.ndim == 1 else x


@dataclass(frozen=True, eq=False)
class AmbientFunction:
    """A function on R^n with a radial envelope: |f(x)| <= envelope(|x|).

    ``evaluator`` maps points of shape (m, n) to values (m,). The envelope
    drives admissibility and the placement of quadrature panels, and is
    spot-checked on 10^3 random points at construction.
    """

    n: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    envelope: RadialProfile
    name: str = "custom"
    params: dict = field(default_factory=dict)
    thread_safe: bool = True
    check: bool = True

    def __post_init__(self):
        if self.check:
            rng = make_rng(0, "envelope-check", self.name)
            radii = self.envelope.scale * 10.0 ** rng.uniform(-2, 2, 1000)
            dirs = rng.standard_normal((1000, self.n))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
            pts = dirs * radii[:, None]
            vals = np.abs(self(pts))
            env = np.array([self.envelope.scalar(float(r)) for r in radii])
            if np.any(vals > env * (1 + _ENVELOPE_SLACK) + 1e-300):
                raise ContractError(f"function {self.name} exceeds its envelope")

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(_as_points(x)), dtype=float)

    def describe(self) -> dict:
        return {"name": self.name, "n": self.n, **self.params}


@dataclass(frozen=True, eq=False)
class GrassmannFunction:
    """A function of affine k-planes in R^n, dominated by a radial envelope in |offset|.

    ``evaluator(frames, offsets)`` takes arrays (m, n, k) and (m, n).
    """

    n: int
    k: int
    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    envelope: RadialProfile
    name: str = "custom"
    params: dict = field(default_factory=dict)
    thread_safe: bool = True
    check: bool = True

    def __post_init__(self):
        if self.check:
            rng = make_rng(0, "envelope-check", self.name)
            g = haar_rotations(self.n, 1000, rng)
            radii = self.envelope.scale * 10.0 ** rng.uniform(-2, 2, 1000)
            frames = g[:, :, : self.k]
            offsets = g[:, :, self.k] * radii[:, None] if self.k < self.n else np.zeros((1000, self.n))
            vals = np.abs(self(frames, offsets))
            env = np.array([self.envelope.scalar(float(r)) for r in radii])
            if np.any(vals > env * (1 + _ENVELOPE_SLACK) + 1e-300):
                raise ContractError(f"function {self.name} exceeds its envelope")

    def __call__(self, frames, offsets) -> np.ndarray:
        frames = np.asarray(frames, dtype=float)
        offsets = np.asarray(offsets, dtype=float)
        if frames.ndim == 2:
            frames, offsets = frames[None], offsets[None]
        return np.asarray(self.evaluator(frames, offsets), dtype=float)

    def at(self, plane: AffinePlane) -> float:
        return float(self(plane.frame, plane.offset)[0])

    def describe(self) -> dict:
        return {"name": self.name, "n": self.n, "k": self.k, **self.params}


# ---------------------------------------------------------------------------
# test-function registry


def _spd(n: int, axes, seed: int) -> tuple[np.ndarray, float]:
    axes = np.asarray(axes, dtype=float)
    if axes.size == 1:
        axes = np.full(n, float(axes))
    if axes.shape != (n,) or np.any(axes <= 0):
        raise ContractError(f"need {n} positive axis rates")
    q = haar_rotations(n, 1, make_rng(seed, "anisotropic"))[0]
    return (q * axes) @ q.T, float(axes.min())


def ambient_gaussian(n: int, rate: float = 1.0) -> AmbientFunction:
    return AmbientFunction(n, lambda x: np.exp(-rate * np.einsum("ij,ij->i", x, x)), gaussian(rate),
                           name="gaussian", params={"rate": rate})


def ambient_radial(n: int, profile: RadialProfile | str | dict) -> AmbientFunction:
    prof = _profile_from(profile)
    return AmbientFunction(n, lambda x: prof(np.linalg.norm(x, axis=1)), prof, name="radial",
                           params={"profile": prof.describe()}, check=False)


def tensor_power(n: int, beta: float) -> AmbientFunction:
    """prod_i (1 + x_i^2)^{-beta/2}, dominated by (1 + |x|^2)^{-beta/2}."""
    return AmbientFunction(
        n, lambda x: np.prod(1.0 + x * x, axis=1) ** (-0.5 * beta), power_tail(0.0, beta),
        name="tensor-power", params={"beta": beta},
    )


def anisotropic_gaussian(n: int, axes=(1.0, 2.0, 3.0, 4.0, 5.0, 6.0), seed: int = 0) -> AmbientFunction:
    """exp(-x^T A x) with A = Q diag(axes) Q^T for a seeded random rotation Q."""
    axes = list(axes)[:n] if np.size(axes) > 1 else axes
    A, amin = _spd(n, axes, seed)
    return AmbientFunction(
        n, lambda x: np.exp(-np.einsum("ij,jk,ik->i", x, A, x)), gaussian(amin),
        name="rotated-anisotropic-gaussian", params={"axes": list(np.ravel(axes)), "seed": seed},
    )


def ambient_zero(n: int) -> AmbientFunction:
    return AmbientFunction(n, lambda x: np.zeros(len(x)), zero(), name="zero")


def grassmann_gaussian(n: int, k: int, rate: float = 1.0) -> GrassmannFunction:
    return GrassmannFunction(
        n, k, lambda fr, u: np.exp(-rate * np.einsum("ij,ij->i", u, u)), gaussian(rate),
        name="gaussian", params={"rate": rate},
    )


def grassmann_radial(n: int, k: int, profile: RadialProfile | str | dict) -> GrassmannFunction:
    prof = _profile_from(profile)
    return GrassmannFunction(n, k, lambda fr, u: prof(np.linalg.norm(u, axis=1)), prof,
                             name="radial", params={"profile": prof.describe()}, check=False)


def grassmann_anisotropic(n: int, k: int, axes=(1.0, 2.0, 3.0, 4.0, 5.0, 6.0), seed: int = 0,
                          tilt: float = 0.5) -> GrassmannFunction:
    """exp(-u^T A u) (1 - tilt + tilt |P e_1|^2): depends on both offset and orientation."""
    axes = list(axes)[:n] if np.size(axes) > 1 else axes
    A, amin = _spd(n, axes, seed)
    if not 0.0 <= tilt <= 1.0:
        raise ContractError("tilt must lie in [0, 1]")

    def ev(fr, u):
        lean = np.einsum("ij,ij->i", fr[:, 0, :], fr[:, 0, :])
        return np.exp(-np.einsum("ij,jk,ik->i", u, A, u)) * (1.0 - tilt + tilt * lean)

    return GrassmannFunction(n, k, ev, gaussian(amin), name="rotated-anisotropic-gaussian",
                             params={"axes": list(np.ravel(axes)), "seed": seed, "tilt": tilt})


def grassmann_constant(n: int, k: int, value: float = 1.0) -> GrassmannFunction:
    return GrassmannFunction(
        n, k, lambda fr, u: np.full(len(u), float(value)),
        RadialProfile(lambda r: abs(value), tail=Tail("power", 0.0), family="constant", check=False),
        name="constant", params={"value": value},
    )


def _profile_from(profile) -> RadialProfile:
    if isinstance(profile, RadialProfile):
        return profile
    if isinstance(profile, str):
        return parse_profile(profile)
    return make_profile(**profile)


AMBIENT = {
    "gaussian": ambient_gaussian,
    "radial": ambient_radial,
    "tensor-power": tensor_power,
    "rotated-anisotropic-gaussian": anisotropic_gaussian,
    "zero": ambient_zero,
}

GRASSMANN = {
    "gaussian": grassmann_gaussian,
    "radial": grassmann_radial,
    "rotated-anisotropic-gaussian": grassmann_anisotropic,
    "constant": grassmann_constant,
}


def make_ambient(name: str, n: int, **params) -> AmbientFunction:
    if name not in AMBIENT:
        raise ContractError(f"unknown test function {name!r}; known: {sorted(AMBIENT)}")
    return AMBIENT[name](n, **params)


def make_grassmann(name: str, n: int, k: int, **params) -> GrassmannFunction:
    if name not in GRASSMANN:
        raise ContractError(f"unknown Grassmann function {name!r}; known: {sorted(GRASSMANN)}")
    return GRASSMANN[name](n, k, **params)


# ---------------------------------------------------------------------------
# k-plane transform


def _equator_power(envelope: RadialProfile, d: int) -> float | Divergent:
    """Exponent of the hemispherical integrand at the equator, for a d-dimensional fibre."""
    tail = envelope.tail
    if tail.kind != "power":
        return 0.0
    a = tail.power
    if a > -d + 1e-9 or (abs(a + d) <= 1e-9 and tail.log_power >= -1.0):
        return Divergent(f"envelope ~ r^{a:g} is not integrable over {d}-planes")
    return -a - d - 1.0


_S_PANELS = 24


def _polar_edges(r: np.ndarray, scale: float) -> np.ndarray:
    """Panel edges in theta_{k+1} = r / sqrt(r^2 + s^2), shape (m, _S_PANELS + 6).

    The in-plane radii s run geometrically from min(r, scale)/4 to 1024 scale,
    with r itself and its dyadic neighbours added; t = 0 and t = 1 close the
    list. The count is fixed so that batches of planes vectorize.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    lo = np.minimum(r, scale) / 4.0
    frac = np.linspace(0.0, 1.0, _S_PANELS)
    s = lo[:, None] * (1024.0 * scale / lo[:, None]) ** frac[None, :]
    s = np.concatenate([s, r[:, None] * 2.0 ** np.arange(-2, 3)[None, :]], axis=1)
    inner = np.sort(r[:, None] / np.sqrt(r[:, None] ** 2 + s**2), axis=1)
    return np.concatenate([np.zeros((len(r), 1)), inner, np.ones((len(r), 1))], axis=1)


def _polar_breaks(r: float, scale: float) -> list[float]:
    return list(_polar_edges(np.array([r]), scale)[0, 1:-1])


def _hemisphere_integrand(f: Callable, frame: np.ndarray, u: np.ndarray, r: float, d: int, eq: float):
    def F(theta):
        t = theta[:, d]
        y = r * theta[:, :d] / t[:, None]
        x = y @ frame.T + u
        # r^d t^{-d-1} with t^eq carried by the rule
        return f(x) * r**d * t ** (-d - 1.0 - eq)

    return F


def kplane_transform(f: AmbientFunction, plane: AffinePlane,
                     spec: QuadratureSpec | None = None) -> Estimate | Divergent:
    """(R_k f)(plane) by hemispherical quadrature; planes through 0 use direct quadrature.

    The direct fallback is flagged ``approximate=True`` so callers can tell
    which representation produced the value.
    """
    spec = spec or QuadratureSpec()
    if plane.n != f.n:
        raise ContractError("plane and function live in different dimensions")
    k = plane.k
    eq = _equator_power(f.envelope, k)
    if isinstance(eq, Divergent):
        return eq
    r = plane_distance(plane)
    if r <= 1e-14 * f.envelope.scale:
        return _direct_subspace(f, plane.frame, np.zeros(f.n), spec)
    g = frame_for_plane(plane.frame, plane.offset).matrix
    F = _hemisphere_integrand(f, g[:, :k], plane.offset, r, k, eq)
    return hemisphere_quadrature(k, F, spec, equator_power=eq,
                                 breakpoints=_polar_breaks(r, f.envelope.scale))


def _direct_subspace(f: AmbientFunction, frame: np.ndarray, u: np.ndarray, spec: QuadratureSpec):
    """int over R^k of f(frame y + u) dy in polar coordinates."""
    k = frame.shape[1]
    rng = make_rng(spec.seed, "direct-subspace", k) if k > 4 else None
    om, w = sphere_rule(k, 2 * spec.sphere_order, rng=rng, samples=spec.sphere_samples)
    dirs = om @ frame.T

    def g(s):
        return s ** (k - 1) * float(w @ f(s * dirs + u))

    env = f.envelope
    res = radial_integral(g, tail=env.tail.shifted(power=k - 1.0), lower_power=k - 1.0,
                          breakpoints=env.breakpoints, scale=env.scale, epsrel=spec.epsrel,
                          truncation=spec.truncation_radius)
    if isinstance(res, Divergent):
        return res
    return Estimate(res.value, res.error, approximate=True)


def _batch_polar_rule(r: np.ndarray, d: int, scale: float, eq: float, nodes: int):
    """Per-plane nodes t (m, q) and weights for int_0^1 t^eq (1-t^2)^{d/2-1} h(t) dt."""
    edges = _polar_edges(r, scale)
    half = 0.5 * d - 1.0
    ts, ws = [], []
    npan = edges.shape[1] - 1
    for i in range(npan):
        lp = eq if i == 0 else 0.0
        rp = half if i == npan - 1 else 0.0
        y, wy = _jacobi_ref(nodes, rp, lp)
        a, b = edges[:, i : i + 1], edges[:, i + 1 : i + 2]
        h = 0.5 * (b - a)
        t = a + h * (y[None, :] + 1.0)
        # raw Gauss-Jacobi weights carry (1+y)^lp (1-y)^rp; restore the rest of the weight
        w = wy[None, :] * h ** (1.0 + lp + rp)
        if not lp:
            w = w * t**eq
        w = w * (1.0 + t) ** half
        if not rp:
            w = w * (1.0 - t) ** half
        ts.append(t)
        ws.append(w)
    return np.concatenate(ts, axis=1), np.concatenate(ws, axis=1)


def kplane_transform_batch(f: AmbientFunction, frames: np.ndarray, offsets: np.ndarray,
                           spec: QuadratureSpec | None = None, nodes: int = 16,
                           order: int | None = None) -> np.ndarray:
    """R_k f at many planes with one fixed hemispherical rule per plane (for Monte Carlo use).

    No refinement or error estimate; accuracy is governed by ``nodes`` per
    polar panel and the angular ``order`` (default ``spec.sphere_order``;
    raise it for strongly anisotropic integrands). Planes must have nonzero
    offset.
    """
    spec = spec or QuadratureSpec()
    frames = np.asarray(frames, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    m, n, d = frames.shape
    eq = _equator_power(f.envelope, d)
    if isinstance(eq, Divergent):
        return np.full(m, math.inf)
    r = np.linalg.norm(offsets, axis=1)
    if np.any(r <= 0):
        raise ContractError("batched transform needs planes off the origin")
    t, wt = _batch_polar_rule(r, d, f.envelope.scale, eq, nodes)
    rng = make_rng(spec.seed, "hemisphere", d) if d > 4 else None
    om, wom = sphere_rule(d, order or spec.sphere_order, rng=rng, samples=spec.sphere_samples)
    out = np.empty(m)
    for i in range(m):
        ti = t[i]
        y = (r[i] * np.sqrt((1.0 - ti) * (1.0 + ti)) / ti)[:, None, None] * om[None, :, :]
        x = y.reshape(-1, d) @ frames[i].T + offsets[i]
        vals = f(x).reshape(len(ti), len(om))
        vals = vals * (r[i] ** d * ti ** (-d - 1.0 - eq))[:, None]
        out[i] = float(wt[i] @ vals @ wom)
    return out


# ---------------------------------------------------------------------------
# j-plane to k-plane transform


def jk_transform(f: GrassmannFunction, plane: AffinePlane, spec: QuadratureSpec | None = None,
                 samples: int | None = None) -> Estimate | Divergent:
    """(R_{j,k} f)(plane): average over O(k) of a hemispherical integral over S^{k-j}_+.

    ``f`` is a function of affine j-planes. The reported error combines the
    Monte Carlo standard error over O(k) and the quadrature refinement change.
    """
    spec = spec or QuadratureSpec()
    j, k, n = f.k, plane.k, plane.n
    if f.n != n or not j < k:
        raise ContractError("need a function of j-planes with j < k in the same R^n")
    d = k - j
    eq = _equator_power(f.envelope, d)
    if isinstance(eq, Divergent):
        return eq
    r = plane_distance(plane)
    if r <= 1e-14 * f.envelope.scale:
        raise ContractError("the j->k transform is implemented for planes off the origin")
    g = frame_for_plane(plane.frame, plane.offset).matrix
    N = samples or spec.group_samples
    rng = make_rng(spec.seed, "jk-transform", j, k)
    gam = haar_rotations(k, N, rng) if j > 0 else np.eye(k)[None]
    N = len(gam)
    # rotated frames of the k-plane: columns g[:, :k] gamma
    rot = np.einsum("ab,mbc->mac", g[:, :k], gam)
    fr_j = rot[:, :, :j]
    fib = rot[:, :, j:]
    u = plane.offset
    edges = _polar_breaks(r, f.envelope.scale)

    def per_sample(n_t, order):
        mc = d > 4
        srng = make_rng(spec.seed, "hemisphere", d) if mc else None
        theta, w, _ = hemisphere_rule(d, n_t, order, eq, edges, rng=srng,
                                      samples=spec.sphere_samples if mc else 0)
        t = theta[:, d]
        y = r * theta[:, :d] / t[:, None]
        fac = r**d * t ** (-d - 1.0 - eq) * w
        out = np.empty(N)
        for i in range(N):
            offs = y @ fib[i].T + u
            frs = np.broadcast_to(fr_j[i], (len(t), n, j))
            out[i] = float(f(frs, offs) @ fac)
        return out

    n_t, order = spec.polar_nodes, spec.sphere_order
    prev = per_sample(n_t, order)
    last = math.inf
    panels = len(edges) + 1
    for _ in range(spec.max_refinements):
        n_t *= 2
        if 1 < d <= 4:
            order *= 2
        if n_t * panels * _sphere_size(d, order, spec.sphere_samples) > _NODE_BUDGET:
            break
        cur = per_sample(n_t, order)
        change = abs(cur.mean() - prev.mean())
        scale = abs(cur.mean())
        done = change <= spec.hemisphere_tol * scale or change <= 1e-300
        # geometric convergence: the next change is about change^2 / last
        done = done or (change < 0.1 * last and change * change / last <= spec.hemisphere_tol * scale)
        if done:
            se = cur.std(ddof=1) / math.sqrt(N) if N > 1 else 0.0
            return Estimate(float(cur.mean()), float(change + se), approximate=bool(N > 1 and se > 0))
        prev, last = cur, change
    raise AccuracyError("j->k hemispherical quadrature did not converge within the node budget")


# ---------------------------------------------------------------------------
# dual transforms


def _mc_estimate(vals: np.ndarray) -> Estimate:
    N = len(vals)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(N)) if N > 1 else 0.0
    return Estimate(mean, se, approximate=True)


def _planes_through(frames: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Offsets of the planes spanned by ``frames`` (m, n, k) passing through x (n,) or (m, n)."""
    x = np.broadcast_to(x, (frames.shape[0], frames.shape[1]))
    return x - np.einsum("mak,mk->ma", frames, np.einsum("mak,ma->mk", frames, x))


def dual_kplane(phi: GrassmannFunction, x, spec: QuadratureSpec | None = None,
                samples: int | None = None) -> Estimate | Divergent:
    """(R_k^* phi)(x): Haar average of phi over the k-planes through x."""
    spec = spec or QuadratureSpec()
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != phi.n:
        raise ContractError("point and function live in different dimensions")
    N = samples or spec.group_samples
    g = haar_rotations(phi.n, N, make_rng(spec.seed, "dual-k", phi.k))
    frames = g[:, :, : phi.k]
    return _mc_estimate(phi(frames, _planes_through(frames, x)))


def dual_jk(phi: GrassmannFunction, zeta: AffinePlane, spec: QuadratureSpec | None = None,
            samples: int | None = None) -> Estimate | Divergent:
    """(R_{j,k}^* phi)(zeta): Haar average over O(n-j) of phi on the k-planes containing zeta."""
    spec = spec or QuadratureSpec()
    n, j, k = phi.n, zeta.k, phi.k
    if zeta.n != n or not j < k:
        raise ContractError("need a j-plane with j < k in the same R^n")
    N = samples or spec.group_samples
    if j > 0:
        if np.linalg.norm(zeta.offset) > 0:
            g_eta = frame_for_plane(zeta.frame, zeta.offset).matrix
        else:
            from .geometry import _complete_basis

            g_eta = _complete_basis(zeta.frame, None)
    else:
        g_eta = np.eye(n)
    rho = haar_rotations(n - j, N, make_rng(spec.seed, "dual-jk", j, k))
    comp = np.einsum("ab,mbc->mac", g_eta[:, j:], rho[:, :, : k - j])
    frames = np.concatenate([np.broadcast_to(zeta.frame, (N, n, j)), comp], axis=2)
    return _mc_estimate(phi(frames, _planes_through(frames, zeta.offset)))


# ---------------------------------------------------------------------------
# weighted norms on the affine Grassmannian


def grassmann_weighted_norm(phi: GrassmannFunction, geom: Geometry, p: float, nu: float,
                            spec: QuadratureSpec | None = None, samples: int | None = None,
                            batches: int = 20) -> Estimate | Divergent:
    """||phi||_{p,nu}: outer radial quadrature of a Haar average over O(n).

    The Haar sample is split into ``batches`` groups; each group's radial
    integral is computed separately and their spread gives the standard
    error (the integral is linear in the average, so the groups' mean is the
    full-sample value). p = inf takes a maximum over a radial grid and the
    sample, flagged approximate.
    """
    spec = spec or QuadratureSpec()
    n, k = geom.n, geom.k
    if (phi.n, phi.k) != (n, k):
        raise ContractError("function and geometry disagree")
    N = samples or spec.group_samples
    g = haar_rotations(n, N, make_rng(spec.seed, "grassmann-norm", k))
    frames, normals = g[:, :, :k], g[:, :, k]
    env = phi.envelope
    fib = n - k
    if math.isinf(p):
        rs = env.scale * np.logspace(-4, 4, 801)
        best = 0.0
        for r in rs:
            best = max(best, float(np.max(np.abs(phi(frames, r * normals)))) * r**nu)
        return Estimate(best, 0.0, approximate=True)
    if p < 1:
        raise ContractError("need p >= 1")
    power = fib - 1.0 + nu * p
    tail = env.tail.shifted(power=power, log_scale=p)
    lower = power + (p * env.a0 if env.support_min == 0 else 0.0)
    B = max(1, min(batches, N // 2))
    groups = np.array_split(np.arange(N), B)
    vals = []
    for idx in groups:
        fr, nm = frames[idx], normals[idx]

        def h(r, fr=fr, nm=nm):
            return r**power * float(np.mean(np.abs(phi(fr, r * nm)) ** p))

        res = radial_integral(h, tail=tail, lower_power=lower,
                              breakpoints=env.breakpoints + (env.support_min,), scale=env.scale,
                              epsrel=max(spec.epsrel, 1e-10), truncation=spec.truncation_radius)
        if isinstance(res, Divergent):
            return res
        vals.append(res.value)
    vals = np.array(vals) * unit_sphere_area(fib)
    weights = np.array([len(i) for i in groups], dtype=float)
    total = float(weights @ vals / weights.sum())
    se = float(vals.std(ddof=1) / math.sqrt(B)) if B > 1 else 0.0
    if total <= 0:
        return Estimate(0.0, se, approximate=True)
    val = total ** (1.0 / p)
    return Estimate(val, val * se / (p * total), approximate=True)
