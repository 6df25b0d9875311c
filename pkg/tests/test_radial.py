import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from kplane.constants import Geometry, unit_sphere_area
from kplane.quadrature import Tail
from kplane.radial import (
    RadialProfile,
    counterexample,
    dual_jk_radial,
    dual_radial,
    extremizer,
    gaussian,
    image_profile,
    indicator,
    jk_radial,
    kplane_radial,
    make_profile,
    mixture,
    parse_profile,
    power_tail,
    shell,
    truncated_power,
    weighted_moment,
    weighted_norm_radial,
)
from kplane.results import ContractError, Divergent


def abel_oracle(f0, k, t, breaks=()):
    """sigma_{k-1} int_t^inf f0(r) (r^2 - t^2)^{(k-2)/2} r dr, integrated directly in r."""
    pts = sorted(b for b in breaks if b > t)
    edges = [t] + pts + [max(pts[-1] if pts else t, t) + 50.0]
    total = 0.0
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        if i == 0 and k == 1:
            # (r - t)^{-1/2} endpoint singularity via the algebraic weight
            g = lambda r: f0(r) * r / math.sqrt(r + t)  # noqa: E731
            v, _ = integrate.quad(g, a, b, weight="alg", wvar=(-0.5, 0.0), epsabs=0, epsrel=1e-12, limit=200)
        else:
            v, _ = integrate.quad(lambda r: f0(r) * (r * r - t * t) ** (0.5 * (k - 2)) * r, a, b,
                                  epsabs=0, epsrel=1e-12, limit=200)
        total += v
    tail, _ = integrate.quad(lambda r: f0(r) * (r * r - t * t) ** (0.5 * (k - 2)) * r, edges[-1], np.inf,
                             epsabs=0, epsrel=1e-12, limit=200)
    return unit_sphere_area(k) * (total + tail)


def dual_oracle(f0, N, K, s):
    """E[f0(s D)] with D^2 ~ Beta((N-K)/2, K/2), the squared distance of e_1 to a random K-plane."""
    a, b = 0.5 * (N - K), 0.5 * K
    pdf = stats.beta(a, b).pdf
    v, _ = integrate.quad(lambda x: f0(s * math.sqrt(x)) * pdf(x), 0, 1, epsabs=0, epsrel=1e-12, limit=400,
                          points=[min(1.0, (c / s) ** 2) for c in (0.5, 1.0, 1.5, 2.0) if c < s])
    return v


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 7) for k in range(1, n)])
def test_gaussian_eigen_relation(n, k):
    g = Geometry(n, k)
    for t in (0.0, 0.3, 1.0, 2.5, 5.0):
        got = kplane_radial(gaussian(), g, t)
        assert got.value == pytest.approx(math.pi ** (k / 2) * math.exp(-t * t), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("name", ["shell", "power_tail", "indicator", "gaussian_power"])
def test_abel_reduction_matches_direct_integral(k, name):
    prof = {"shell": shell(0.5, 1.5), "power_tail": power_tail(0.0, 4.5), "indicator": indicator(1.2),
            "gaussian_power": make_profile("gaussian_power", alpha=1.0, rate=0.7)}[name]
    g = Geometry(k + 2, k)
    for t in (0.1, 0.7, 1.3):
        want = abel_oracle(prof, k, t, prof.breakpoints)
        got = kplane_radial(prof, g, t).value
        assert got == pytest.approx(want, rel=1e-8, abs=1e-14)


@pytest.mark.parametrize("n,j,k", [(3, 1, 2), (4, 1, 3), (5, 2, 4), (4, 1, 2)])
def test_jk_radial_gaussian(n, j, k):
    g = Geometry(n, k, j)
    for t in (0.0, 0.5, 2.0):
        assert jk_radial(gaussian(), g, t).value == pytest.approx(math.pi ** ((k - j) / 2) * math.exp(-t * t), rel=1e-9)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (5, 2)])
@pytest.mark.parametrize("name", ["gaussian", "shell", "truncated"])
def test_dual_radial_matches_beta_average(n, k, name):
    prof = {"gaussian": gaussian(), "shell": shell(0.5, 1.5), "truncated": truncated_power(-1.7, 1.0)}[name]
    for s in (0.4, 1.0, 3.0):
        got = dual_radial(prof, Geometry(n, k), s).value
        assert got == pytest.approx(dual_oracle(prof, n, k, s), rel=1e-8, abs=1e-14)


def test_dual_jk_uses_reduced_dimensions():
    g = Geometry(5, 3, 1)
    for s in (0.5, 2.0):
        assert dual_jk_radial(gaussian(), g, s).value == pytest.approx(dual_oracle(gaussian(), 4, 2, s), rel=1e-9)


def test_dual_of_constant_is_constant():
    one = RadialProfile(lambda r: 1.0, tail=Tail("power", 0.0), family="one", check=False)
    assert dual_radial(one, Geometry(3, 1), 2.0).value == pytest.approx(1.0, rel=1e-14)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(0.05, 3.0), st.sampled_from([(2, 1), (3, 1), (3, 2), (4, 2)]))
def test_dilation_covariance(lam, t, nk):
    # R_k[f(lam .)](t) = lam^-k (R_k f)(lam t)
    n, k = nk
    f = shell(0.5, 1.5)
    lhs = kplane_radial(f.dilate(lam), Geometry(n, k), t).value
    rhs = lam**-k * kplane_radial(f, Geometry(n, k), lam * t).value
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("n,p,mu", [(2, 2.0, 1.0), (3, 1.0, 0.0), (3, 3.0, -0.5), (5, 1.5, 2.0)])
def test_gaussian_weighted_norm_closed_form(n, p, mu):
    # ||e^{-r^2}||^p = sigma_{n-1} Gamma((n + mu p)/2) / (2 p^{(n + mu p)/2})
    a = 0.5 * (n + mu * p)
    want = (unit_sphere_area(n) * math.gamma(a) / (2 * p**a)) ** (1 / p)
    assert weighted_norm_radial(gaussian(), n, p, mu).value == pytest.approx(want, rel=1e-11)


def test_sup_norm_is_flagged_approximate():
    est = weighted_norm_radial(gaussian(), 2, math.inf, 1.0)
    assert est.approximate
    assert est.value == pytest.approx(math.exp(-0.5) / math.sqrt(2), rel=1e-6)


@pytest.mark.parametrize("n,p,mu,eps", [(2, 2.0, 1.0, 0.1), (3, 1.5, 0.5, 0.01), (4, 3.0, 0.0, 0.05)])
def test_extremizer_source_norm(n, p, mu, eps):
    f = extremizer(mu, n, p, eps)
    want = (unit_sphere_area(n) / (eps * p)) ** (1 / p)
    assert weighted_norm_radial(f, n, p, mu).value == pytest.approx(want, rel=1e-10)


def test_boundary_counterexample_image_norm_diverges():
    # mu = k - n/p: finite source norm, divergent target norm
    g = Geometry(2, 1)
    f = counterexample(0.0, 2, 2.0, 0.2)
    assert not isinstance(weighted_norm_radial(f, 2, 2.0, 0.0), Divergent)
    img = image_profile(f, g, "kplane")
    assert isinstance(weighted_norm_radial(img, 1, 2.0, -0.5), Divergent)


def test_weighted_moment_damped_matches_direct():
    # sigma_2 int r^2 r^0.5 (1+r^2)^-1 e^{-r^2} dr
    want = 4 * math.pi * integrate.quad(lambda r: r**2.5 / (1 + r * r) * math.exp(-r * r), 0, np.inf, epsrel=1e-13)[0]
    got = weighted_moment(gaussian(), 3, 0.5, damping=2.0, kappa=1.0)
    assert got.value == pytest.approx(want, rel=1e-10)


def test_profile_roundtrip_and_parsing():
    p = parse_profile("family=extremizer, mu=1, n=2, p=2, eps=0.01")
    q = make_profile(**p.describe())
    assert q(3.0) == pytest.approx(p(3.0))
    assert parse_profile("gaussian, rate=2")(1.0) == pytest.approx(math.exp(-2))
    m = mixture([{"weight": 2.0, "family": "gaussian", "rate": 1.0},
                 {"weight": 1.0, "family": "power_tail", "alpha": 0.0, "beta": 3.0}])
    assert make_profile(**m.describe())(0.5) == pytest.approx(m(0.5))
    d = gaussian().dilate(2.0)
    assert make_profile(**d.describe())(0.5) == pytest.approx(math.exp(-1.0))


@pytest.mark.parametrize("text", ["family=nope", "rate=1", "family=gaussian, rate=abc", "gaussian, rate"])
def test_bad_profiles(text):
    with pytest.raises(ContractError):
        parse_profile(text)


def test_tail_metadata_is_checked():
    with pytest.raises(ContractError):
        RadialProfile(lambda r: (1 + r) ** -3, tail=Tail("power", -2.0))


def test_vectorised_call():
    r = np.array([0.0, 1.0, 2.0])
    assert np.allclose(gaussian()(r), np.exp(-r * r))
    assert np.allclose(shell(1, 2)(r), [0.0, 0.0, 0.0])
