"""Acceptance suite: one test per criterion, each with its runtime budget.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import math
import time

import mpmath
import numpy as np
import pytest
from scipy import special

import kplane.experiments as ex
from kplane.constants import (
    ExponentProfile,
    Geometry,
    lambda_jk,
    lambda_mu,
    sharp_norm_Rjk,
    sharp_norm_Rjk_dual,
    sharp_norm_Rk,
    sharp_norm_Rk_dual,
    unit_sphere_area,
)
from kplane.geometry import QuadratureSpec, hemisphere_quadrature
from kplane.radial import gaussian, jk_radial, kplane_radial
from kplane.reports import ExperimentReport, reports_to_json

P_VALUES = (1.0, 1.5, 2.0, 3.0, 10.0, math.inf)


def _mp_norm(n, k, j, p, mu):
    """Forward j->k sharp norm evaluated in 40-digit arithmetic."""
    with mpmath.workdps(40):
        ip = mpmath.mpf(0) if math.isinf(p) else 1 / mpmath.mpf(p)
        ipp = 1 - ip
        sig = lambda d: 2 * mpmath.pi ** (mpmath.mpf(d) / 2) / mpmath.gamma(mpmath.mpf(d) / 2)  # noqa: E731
        mu = mpmath.mpf(mu)
        v = (mpmath.pi ** (mpmath.mpf(k - j) / 2) * (sig(n - k) / sig(n - j)) ** ip
             * mpmath.gamma((mu + n * ip - k + j * ipp) / 2) / mpmath.gamma((mu + n * ip - j * ip) / 2))
        return float(v)


def _constants_grid():
    pts = []
    for n in range(2, 7):
        for k in range(1, n):
            for j in range(0, k):
                for p in P_VALUES:
                    e = ExponentProfile(p, 0.0)
                    lo = k - n * e.inv_p - j * e.inv_p_prime
                    for margin in (0.25, 1.0, 3.5):
                        pts.append((n, k, j, p, lo + margin, margin))
    return pts


def test_c01_constants_self_consistency():
    pts = _constants_grid()
    assert len(pts) >= 200
    t0 = time.perf_counter()
    got = []
    for n, k, j, p, mu, margin in pts:
        g, e = Geometry(n, k, j), ExponentProfile(p, mu)
        row = {"jk": sharp_norm_Rjk(g, e)}
        if j == 0:
            row["k"] = sharp_norm_Rk(Geometry(n, k), e)
        if p == 1.0:
            row["lam"] = lambda_jk(g, mu) if j else lambda_mu(Geometry(n, k), mu)
        # dual at (p', mu_d) with mu_d strictly below (n - k)/p'
        ed = ExponentProfile(e.p_prime, (n - k) * e.inv_p - margin) if p != 1.0 else None
        if ed is not None:
            row["dual"] = sharp_norm_Rjk_dual(g, ed) if j else sharp_norm_Rk_dual(Geometry(n, k), ed)
            row["dual_nu"] = ed.mu - (k - j) * ed.inv_p
        got.append(row)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"{elapsed:.2f} s"

    for (n, k, j, p, mu, margin), row in zip(pts, got):
        want = _mp_norm(n, k, j, p, mu)
        assert row["jk"] == pytest.approx(want, rel=1e-12)
        if "k" in row:                                             # (a) j = 0 reduction
            assert row["jk"] == pytest.approx(row["k"], rel=1e-12)
        if "lam" in row:                                           # (b) p = 1 equals lambda
            assert row["jk"] == pytest.approx(row["lam"], rel=1e-12)
        if "dual" in row:                                          # (c) duality substitution
            want_d = _mp_norm(n, k, j, p, -row["dual_nu"])
            assert row["dual"] == pytest.approx(want_d, rel=1e-12)


def test_c02_hemisphere_moments():
    cases = [(k, s) for k in (1, 2, 3) for s in (-0.7, -0.25, 0.0, 0.8, 2.5)]
    t0 = time.perf_counter()
    vals = [hemisphere_quadrature(k, lambda th: np.ones(len(th)), equator_power=s).value for k, s in cases]
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"{elapsed:.2f} s"
    for (k, s), v in zip(cases, vals):
        # sigma_{k-1} int_0^1 (1 - t^2)^{k/2 - 1} t^s dt = sigma_{k-1} B((s+1)/2, k/2) / 2
        assert v == pytest.approx(unit_sphere_area(k) * special.beta(0.5 * (s + 1), 0.5 * k) / 2, rel=1e-10)


def test_c03_gaussian_eigen_relation():
    ts = np.linspace(0.0, 5.0, 11)
    t0 = time.perf_counter()
    for n in range(2, 7):
        for k in range(1, n):
            for t in ts:
                want = math.pi ** (k / 2) * math.exp(-t * t)
                assert kplane_radial(gaussian(), Geometry(n, k), t).value == pytest.approx(want, rel=1e-9)
            for j in range(1, k):
                for t in ts:
                    want = math.pi ** ((k - j) / 2) * math.exp(-t * t)
                    assert jk_radial(gaussian(), Geometry(n, k, j), t).value == pytest.approx(want, rel=1e-9)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"{elapsed:.2f} s"


MC_IDENTITY_POINTS = [
    ("identity_k_dual", {"n": 3, "k": 1, "j": 0}, -1.5),
    ("identity_k_dual", {"n": 4, "k": 2, "j": 0}, -2.0),
    ("identity_jk_dual", {"n": 4, "k": 2, "j": 1}, -1.5),
]


def test_c04_exact_identities():
    spec = QuadratureSpec().to_dict()
    jobs = ex.identity_jobs(5)
    for kind, geom, mu in MC_IDENTITY_POINTS:
        jobs.append((kind, {"profile": {"family": "gaussian", "rate": 1.0}, "geom": geom, "mu": mu, "kappa": 1,
                            "method": "monte-carlo", "samples": None, "tol": 1e-6}, spec))
    kinds = {kind for kind, _, _ in jobs}
    assert kinds == {"identity_k", "identity_jk", "identity_k_dual", "identity_jk_dual"}
    t0 = time.perf_counter()
    reports = ex.run_jobs(jobs, 1)
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0, f"{elapsed:.1f} s"
    bad = [(r.id, r.rel_err, r.notes) for r in reports if r.status == "fail"]
    assert not bad
    passed = [r for r in reports if r.status == "pass"]
    # inapplicable rows are divergent sides only, and they are rare
    assert len(passed) >= 0.95 * len(reports)
    for r in passed:
        if r.lhs_err:
            assert abs(r.lhs - r.rhs) <= 1e-6 * abs(r.rhs) + 3 * r.lhs_err
        else:
            assert r.rel_err <= 1e-6


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_c05_duality_pairing(n, k):
    t0 = time.perf_counter()
    r = ex.verify_duality_pairing(geom=Geometry(n, k), samples=100_000)
    elapsed = time.perf_counter() - t0
    # budget is 2 min for the four points together
    assert elapsed < 30.0, f"{elapsed:.1f} s"
    target = math.pi ** (k / 2) * (math.pi / 2) ** ((n - k) / 2)
    assert r.rhs == pytest.approx(target, rel=1e-14)
    assert r.lhs_err > 0
    assert abs(r.lhs - target) <= 3 * math.hypot(r.lhs_err, r.rhs_err or 0.0)
    assert r.passed


def test_c06_sharp_norm_reproduction():
    forward_k = [pt for pt in ex.SWEEP_POINTS if pt[0] == "forward-k"]
    forward_jk = [pt for pt in ex.SWEEP_POINTS if pt[0] == "forward-jk"]
    assert len(forward_k) >= 6 and len(forward_jk) >= 3
    assert forward_k[0][1:] == ({"n": 2, "k": 1, "j": 0}, 2.0, 1.0)
    t0 = time.perf_counter()
    reports = [ex.norm_sweep(s, Geometry(**g), p, mu) for s, g, p, mu in ex.SWEEP_POINTS]
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0, f"{elapsed:.1f} s"
    assert reports[0].rhs == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    for r in reports:
        ratios = [row["ratio"] for row in r.table]
        assert all(b >= a for a, b in zip(ratios, ratios[1:])), r.id
        assert max(ratios) <= r.rhs * (1 + 1e-6), r.id
        assert abs(r.lhs - r.rhs) <= 0.02 * r.rhs, r.id
        assert r.passed, (r.id, r.notes)


def test_c07_upper_bound_universality():
    t0 = time.perf_counter()
    reports = [ex.bound_check(s, Geometry(**g), p, mu, n_random=50) for s, g, p, mu in ex.BOUND_POINTS]
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0, f"{elapsed:.1f} s"
    for r in reports:
        # library profiles plus 50 random mixtures, each with its own ratio row
        assert sum(1 for row in r.table if "ratio" in row) >= 50
        assert all(row["ok"] for row in r.table if "ratio" in row)
        assert r.passed, (r.id, r.notes)


def test_c08_scaling_audit():
    t0 = time.perf_counter()
    reports = [ex.scaling_audit(s, Geometry(**g), p, mu) for s, g, p, mu in ex.SCALING_POINTS]
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"{elapsed:.1f} s"
    for r in reports:
        assert len(r.table) >= 20
        assert r.rel_err <= 1e-8
        for off in (0.5, -0.5):
            col = [row[f"ratio_offset_{off:+g}"] for row in r.table]
            lam = [row["lam"] for row in r.table]
            # ratio(lam) / ratio(1) = lam^-offset
            base = col[lam.index(1.0)]
            for lm, v in zip(lam, col):
                assert v / base == pytest.approx(lm ** -off, rel=1e-8)
        assert r.passed


def test_c09_divergence_demos():
    t0 = time.perf_counter()
    reports = [ex.divergence_demo(c, Geometry(**g), p, d) for c, g, p, d in ex.DIVERGENCE_POINTS]
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"{elapsed:.1f} s"
    for r in reports:
        radii = [row["R"] for row in r.table]
        assert max(radii) >= 1e8
        partial = [row["A"] for row in r.table]
        assert all(b > a for a, b in zip(partial, partial[1:]))
        assert abs(r.lhs - r.target) <= 0.25 * abs(r.target)
        inside = [row["A_inside"] for row in r.table]
        assert abs(inside[-1] - inside[-2]) <= 0.05 * abs(inside[-1])
        assert r.passed, (r.id, r.notes)


REPLAY_CASES = [
    lambda: ex.verify_identity_k("gaussian", Geometry(3, 1), 1.0),
    lambda: ex.verify_identity_jk_dual("gaussian", Geometry(4, 2, 1), -1.5, 1, method="monte-carlo",
                                       samples=4000, spec=QuadratureSpec(seed=11)),
    lambda: ex.verify_duality_pairing(geom=Geometry(3, 1), samples=5000, spec=QuadratureSpec(seed=3)),
    lambda: ex.norm_sweep("forward-k", Geometry(2, 1), 2.0, 1.0),
    lambda: ex.bound_check("forward-k", Geometry(3, 1), 2.0, 1.0, n_random=5, spec=QuadratureSpec(seed=8)),
    lambda: ex.scaling_audit("forward-k", Geometry(3, 1), 2.0, 1.0, log2_range=3),
    lambda: ex.divergence_demo("boundary", Geometry(2, 1), 2.0, 0.2),
]


def test_c10_reproducibility():
    for make in REPLAY_CASES:
        first = make()
        text = reports_to_json([first])
        again = ex.replay(ExperimentReport.from_dict(first.to_dict()))
        assert reports_to_json([again]) == text
