"""Sampling and quadrature on O(n), spheres, hemispheres and affine planes."""

from __future__ import annotations

import math
import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .quadrature import jacobi_panel, sphere_rule
from .results import AccuracyError, ContractError, DegeneratePlaneError, Estimate

_ORTHO_TOL = 1e-12


def make_rng(seed: int, *stream) -> np.random.Generator:
    """Counter-based (Philox) generator for ``seed`` and an optional stream key.

    Stream keys may be ints or strings; a given (seed, stream) always yields
    the same sequence regardless of how many other streams exist.
    """
    keys = tuple(zlib.crc32(s.encode()) if isinstance(s, str) else int(s) for s in stream)
    ss = np.random.SeedSequence(int(seed), spawn_key=keys)
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy and sampling knobs shared by the quadrature routines.

    ``truncation_radius`` is in units of the integrand's scale; beyond it
    power tails are completed analytically.
    """

    epsrel: float = 1e-11
    truncation_radius: float = 1e4
    singular_substitution: bool = True
    polar_nodes: int = 24
    sphere_order: int = 12
    sphere_samples: int = 4096
    group_samples: int = 10_000
    radial_nodes: int = 48
    max_refinements: int = 6
    hemisphere_tol: float = 1e-11
    seed: int = 0

    def __post_init__(self):
        for name in ("polar_nodes", "sphere_order", "sphere_samples", "group_samples", "radial_nodes"):
            if getattr(self, name) < 1:
                raise ContractError(f"{name} must be >= 1")
        if not self.truncation_radius > 0:
            raise ContractError("truncation_radius must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RotationSample:
    matrix: np.ndarray
    stream_state: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True, eq=False)
class AffinePlane:
    """A k-plane ``span(frame) + offset`` with ``offset`` orthogonal to the frame."""

    frame: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        frame = np.atleast_2d(np.asarray(self.frame, dtype=float))
        if frame.shape[0] == 1 and np.asarray(self.frame).ndim == 1:
            frame = frame.T
        offset = np.asarray(self.offset, dtype=float).reshape(-1)
        if frame.shape[0] != offset.shape[0]:
            raise ContractError("frame and offset live in different dimensions")
        gram = frame.T @ frame
        if not np.allclose(gram, np.eye(frame.shape[1]), rtol=0, atol=_ORTHO_TOL * 10):
            raise ContractError("frame columns are not orthonormal")
        if np.max(np.abs(frame.T @ offset), initial=0.0) > _ORTHO_TOL * max(1.0, np.linalg.norm(offset)) * 10:
            raise ContractError("offset is not orthogonal to the frame")
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "offset", offset)

    @property
    def n(self) -> int:
        return self.frame.shape[0]

    @property
    def k(self) -> int:
        return self.frame.shape[1]

    @classmethod
    def through(cls, frame: np.ndarray, point: np.ndarray) -> "AffinePlane":
        """The plane spanned by ``frame`` passing through ``point``."""
        frame = np.asarray(frame, dtype=float)
        point = np.asarray(point, dtype=float)
        return cls(frame, point - frame @ (frame.T @ point))

    @classmethod
    def from_rotation(cls, g: np.ndarray, k: int, r: float) -> "AffinePlane":
        """The plane g (R^k + r e_{k+1})."""
        return cls(g[:, :k], r * g[:, k])

    def rotated(self, g: np.ndarray) -> "AffinePlane":
        return AffinePlane(g @ self.frame, g @ self.offset)


def plane_distance(plane: AffinePlane) -> float:
    """Euclidean distance from the plane to the origin."""
    return float(np.linalg.norm(plane.offset))


def haar_rotations(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent Haar-distributed orthogonal n x n matrices, shape (size, n, n).

    QR of a Gaussian matrix with the signs fixed so that R has a positive
    diagonal; without the sign fix the law is not Haar.
    """
    z = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    return q * d[:, None, :]


def haar_rotation(n: int, rng: np.random.Generator) -> RotationSample:
    state = rng.bit_generator.state
    return RotationSample(haar_rotations(n, 1, rng)[0], state)


def uniform_sphere_points(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((size, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def uniform_sphere_point(d: int, rng: np.random.Generator) -> np.ndarray:
    return uniform_sphere_points(d, 1, rng)[0]


def _complete_basis(cols: np.ndarray, rng: np.random.Generator | None) -> np.ndarray:
    n, m = cols.shape
    basis = [c for c in cols.T]
    floor = 1.0 / math.sqrt(n)
    for i in range(n):
        if len(basis) == n:
            break
        v = np.zeros(n)
        v[i] = 1.0
        for _ in range(2):
            v = v - np.array(basis).T @ (np.array(basis) @ v)
        nv = np.linalg.norm(v)
        if nv > floor:
            basis.append(v / nv)
    if len(basis) < n:
        # fall back to an SVD complement; only reached for unlucky alignments
        u, _, _ = np.linalg.svd(np.array(basis).T, full_matrices=True)
        basis.extend(u[:, len(basis):].T)
    g = np.array(basis).T
    if rng is not None and n - m > 0:
        h = haar_rotations(n - m, 1, rng)[0]
        g[:, m:] = g[:, m:] @ h
    return g


def frame_for_plane(frame: np.ndarray, u: np.ndarray, rng: np.random.Generator | None = None) -> RotationSample:
    """An orthogonal g with g e_i = frame[:, i] (i <= k) and g e_{k+1} = u/|u|.

    The remaining columns are completed from the standard basis in order,
    which gives the identity for the coordinate plane; pass ``rng`` to
    randomize the completion.
    """
    frame = np.atleast_2d(np.asarray(frame, dtype=float))
    u = np.asarray(u, dtype=float).reshape(-1)
    r = np.linalg.norm(u)
    if r == 0.0:
        raise DegeneratePlaneError("the hemispherical representation needs a nonzero offset")
    if np.max(np.abs(frame.T @ u), initial=0.0) > _ORTHO_TOL * 10 * max(1.0, r):
        raise ContractError("offset is not orthogonal to the frame")
    g = _complete_basis(np.column_stack([frame, u / r]), rng)
    return RotationSample(g)


# ---------------------------------------------------------------------------
# hemisphere S^k_+ = {theta in S^k : theta_{k+1} > 0}


def _polar_rule(k: int, n_t: int, equator_power: float, breakpoints=()):
    """Nodes t in (0,1) and weights for int_0^1 t^s (1-t^2)^{k/2-1} h(t) dt.

    Returned weights already include t^s (1 - t^2)^{k/2 - 1}.
    """
    edges = [0.0] + sorted(b for b in breakpoints if 0.0 < b < 1.0) + [1.0]
    ts, ws = [], []
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        lp = equator_power if i == 0 else 0.0
        rp = 0.5 * k - 1.0 if i == len(edges) - 2 else 0.0
        t, w = jacobi_panel(a, b, n_t, lp, rp)
        ws.append(w * t**equator_power * (1.0 - t * t) ** (0.5 * k - 1.0))
        ts.append(t)
    return np.concatenate(ts), np.concatenate(ws)


def hemisphere_rule(k: int, n_t: int, order: int, equator_power: float = 0.0, breakpoints=(),
                    rng: np.random.Generator | None = None, samples: int = 0):
    """Nodes theta (m, k+1), weights (m,), and the sphere-node index of each node.

    Uses theta = (omega sin(phi), cos(phi)) with t = cos(phi), for which
    d sigma = (1 - t^2)^{k/2 - 1} dt d sigma(omega); the weights include the
    factor t^equator_power.
    """
    t, wt = _polar_rule(k, n_t, equator_power, breakpoints)
    om, wom = sphere_rule(k, order, rng=rng, samples=samples)
    s = np.sqrt(1.0 - t * t)
    theta = np.empty((len(t), len(om), k + 1))
    theta[:, :, :k] = s[:, None, None] * om[None, :, :]
    theta[:, :, k] = t[:, None]
    w = wt[:, None] * wom[None, :]
    idx = np.broadcast_to(np.arange(len(om))[None, :], w.shape)
    return theta.reshape(-1, k + 1), w.ravel(), idx.ravel()


_NODE_BUDGET = 4_000_000


def _sphere_size(d: int, order: int, samples: int) -> int:
    """Number of nodes of ``sphere_rule(d, order)``."""
    if d == 1:
        return 2
    if d > 4:
        return samples
    return order ** (d - 2) * 2 * order


def _hemisphere_once(k, F, n_t, order, equator_power, breakpoints, rng, samples):
    mc = k > 4
    theta, w, idx = hemisphere_rule(k, n_t, order, equator_power, breakpoints, rng=rng, samples=samples)
    vals = np.asarray(F(theta), dtype=float) * w
    if not mc:
        return float(vals.sum()), 0.0
    per = np.bincount(idx, weights=vals) * samples
    return float(per.mean()), float(per.std(ddof=1) / math.sqrt(samples))


def hemisphere_quadrature(
    k: int,
    F: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec | None = None,
    *,
    equator_power: float = 0.0,
    breakpoints=(),
    tol: float | None = None,
) -> Estimate:
    """Integral over S^k_+ of ``F(theta) * theta_{k+1}**equator_power`` d sigma.

    ``F`` takes an array of points of shape (m, k+1). Put any algebraic
    factor in theta_{k+1} that is singular at the equator into
    ``equator_power`` (it must exceed -1); ``breakpoints`` are values of
    theta_{k+1} where F is not smooth. The rule is refined by doubling until
    two successive values agree to ``tol`` (relative).
    """
    spec = spec or QuadratureSpec()
    tol = spec.hemisphere_tol if tol is None else tol
    if equator_power <= -1.0:
        raise ContractError("equator_power must exceed -1")
    mc = k > 4
    samples = spec.sphere_samples if mc else 0

    def once(n_t, order):
        # same Monte Carlo sphere nodes at every level; only the polar rule refines
        rng = make_rng(spec.seed, "hemisphere", k) if mc else None
        return _hemisphere_once(k, F, n_t, order, equator_power, breakpoints, rng, samples)

    n_panels = 1 + sum(1 for b in breakpoints if 0.0 < b < 1.0)
    n_t, order = spec.polar_nodes, spec.sphere_order
    prev, _ = once(n_t, order)
    diff = last = math.inf
    for _ in range(spec.max_refinements):
        n_t = 2 * n_t
        if 1 < k <= 4:
            order = 2 * order
        size = n_t * n_panels * _sphere_size(k, order, samples)
        if size > _NODE_BUDGET:
            break
        cur, se = once(n_t, order)
        diff = abs(cur - prev)
        if diff <= tol * abs(cur) or diff <= 1e-300:
            return Estimate(cur, diff + se)
        # geometric convergence: the next change is about diff^2 / last
        if diff < 0.1 * last and diff * diff / last <= tol * abs(cur):
            return Estimate(cur, diff + se)
        prev, last = cur, diff
    raise AccuracyError(
        f"hemisphere quadrature did not reach rel. tol {tol:g} (last change {diff:.3g}) "
        f"within {_NODE_BUDGET:.0e} nodes"
    )
