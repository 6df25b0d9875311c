import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplane.constants import (
    ExponentProfile,
    Geometry,
    lambda_jk,
    lambda_jk_dual,
    lambda_mu,
    lambda_mu_dual,
    log_gamma,
    sharp_norm_Rjk,
    sharp_norm_Rjk_dual,
    sharp_norm_Rk,
    sharp_norm_Rk_dual,
    dual_jk_displayed_form,
    unit_sphere_area,
    validate_parameters,
)
from kplane.results import AdmissibilityError, ContractError, Divergent

mpmath.mp.dps = 30


def mp_sigma(d):
    return 2 * mpmath.pi ** (mpmath.mpf(d) / 2) / mpmath.gamma(mpmath.mpf(d) / 2)


def mp_norm_jk(n, j, k, p, mu):
    ip = mpmath.mpf(0) if math.isinf(p) else 1 / mpmath.mpf(p)
    ipp = 1 - ip
    return (
        mpmath.pi ** (mpmath.mpf(k - j) / 2)
        * (mp_sigma(n - k) / mp_sigma(n - j)) ** ip
        * mpmath.gamma((mu + n * ip - k + j * ipp) / 2)
        / mpmath.gamma((mu + n * ip - j * ip) / 2)
    )


class TestLogGamma:
    @pytest.mark.parametrize(
        "x, expected",
        [(1.0, 0.0), (0.5, 0.5723649429247001), (10.0, 12.801827480081469)],
    )
    def test_examples(self, x, expected):
        assert log_gamma(x) == pytest.approx(expected, rel=1e-14, abs=0)

    def test_relative_accuracy_against_mpmath(self):
        xs = np.concatenate([np.logspace(-3, 3, 600), np.linspace(0.9, 1.1, 201), np.linspace(1.9, 2.1, 201)])
        worst = 0.0
        for x in xs:
            ref = mpmath.loggamma(mpmath.mpf(float(x)))
            if ref == 0:
                assert log_gamma(x) == 0.0
                continue
            worst = max(worst, abs(float((log_gamma(x) - ref) / ref)))
        assert worst <= 1e-13

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(ValueError):
            log_gamma(x)


@pytest.mark.parametrize("d, expected", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi)])
def test_unit_sphere_area(d, expected):
    assert unit_sphere_area(d) == pytest.approx(expected, rel=1e-15)


def test_unit_sphere_area_domain():
    with pytest.raises(ValueError):
        unit_sphere_area(0)


class TestGeometryAndExponents:
    @pytest.mark.parametrize("args", [(1, 1), (3, 3), (3, 0), (4, 2, 2), (4, 2, -1)])
    def test_invalid_geometry(self, args):
        with pytest.raises(ContractError):
            Geometry(*args)

    def test_conjugates(self):
        e = ExponentProfile(1, 0.0)
        assert (e.inv_p, e.inv_p_prime, e.p_prime) == (1.0, 0.0, math.inf)
        e = ExponentProfile("inf", 0.0)
        assert (e.inv_p, e.inv_p_prime, e.p_prime) == (0.0, 1.0, 1.0)
        e = ExponentProfile(3, 0.0)
        assert e.inv_p + e.inv_p_prime == 1.0

    def test_bad_p(self):
        with pytest.raises(ContractError):
            ExponentProfile(0.5, 0.0)


class TestLambdas:
    def test_lambda_mu_examples(self):
        assert lambda_mu(Geometry(3, 1), 0.0) == pytest.approx(1.0, rel=1e-15)
        assert lambda_mu(Geometry(2, 1), 1.0) == pytest.approx(2 / math.pi, rel=1e-14)
        assert lambda_mu(Geometry(4, 2), -1.0) == pytest.approx(2.0, rel=1e-14)

    def test_lambda_mu_inadmissible(self):
        with pytest.raises(AdmissibilityError, match="k - n"):
            lambda_mu(Geometry(3, 1), -2.5)
        assert isinstance(lambda_mu(Geometry(3, 1), -2.0), Divergent)

    def test_lambda_mu_dual_examples(self):
        assert lambda_mu_dual(2, -2.0) == pytest.approx(math.pi, rel=1e-14)
        assert lambda_mu_dual(1, -1.0) == pytest.approx(math.pi, rel=1e-14)
        assert isinstance(lambda_mu_dual(3, 0.0), Divergent)
        with pytest.raises(AdmissibilityError):
            lambda_mu_dual(3, 0.5)

    def test_lambda_mu_dual_blows_up_near_zero(self):
        vals = [lambda_mu_dual(3, -(10.0**-e)) for e in range(1, 9)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_lambda_jk_examples(self):
        assert lambda_jk(Geometry(4, 2, 1), 0.0) == pytest.approx(1.0, rel=1e-15)
        assert lambda_jk(Geometry(3, 1, 0), 1.0) == lambda_mu(Geometry(3, 1), 1.0)
        assert lambda_jk(Geometry(4, 2, 1), 1.0) == pytest.approx(math.pi / 4, rel=1e-14)

    def test_lambda_jk_dual_examples(self):
        assert lambda_jk_dual(Geometry(4, 3, 1), -2.0) == pytest.approx(math.pi, rel=1e-14)
        assert lambda_jk_dual(Geometry(5, 3, 0), -1.3) == lambda_mu_dual(3, -1.3)
        assert lambda_jk_dual(Geometry(4, 2, 1), -1.0) == pytest.approx(math.pi, rel=1e-14)


class TestSharpNorms:
    def test_Rk_example(self):
        v = sharp_norm_Rk(Geometry(2, 1), ExponentProfile(2, 1.0))
        assert v == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_Rk_p_inf_boundary(self):
        assert isinstance(sharp_norm_Rk(Geometry(3, 1), ExponentProfile("inf", 1.0)), Divergent)

    def test_Rk_inadmissible(self):
        with pytest.raises(AdmissibilityError, match="k - n/p"):
            sharp_norm_Rk(Geometry(2, 1), ExponentProfile(2, -0.5))

    def test_nu_contract(self):
        with pytest.raises(ContractError):
            sharp_norm_Rk(Geometry(2, 1), ExponentProfile(2, 1.0, nu=1.0))
        v = sharp_norm_Rk(Geometry(2, 1), ExponentProfile(2, 1.0, nu=0.5))
        assert v == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_Rjk_examples(self):
        geom = Geometry(4, 2, 1)
        assert sharp_norm_Rjk(geom, ExponentProfile(1, 0.0)) == pytest.approx(1.0, rel=1e-14)
        expected = math.sqrt(math.pi) * math.sqrt(0.5) * math.gamma(0.75) / math.gamma(1.25)
        assert sharp_norm_Rjk(geom, ExponentProfile(2, 1.0)) == pytest.approx(expected, rel=1e-14)
        assert expected == pytest.approx(1.69442616958795817, rel=1e-15)

    def test_Rk_dual_example(self):
        v = sharp_norm_Rk_dual(Geometry(2, 1), ExponentProfile(2, 0.0))
        assert v == pytest.approx(math.gamma(0.25) / math.gamma(0.75), rel=1e-14)
        assert v == pytest.approx(2.95867511918863889, rel=1e-14)

    def test_Rk_dual_boundary(self):
        assert isinstance(sharp_norm_Rk_dual(Geometry(3, 1), ExponentProfile(2, 1.0)), Divergent)
        with pytest.raises(AdmissibilityError):
            sharp_norm_Rk_dual(Geometry(3, 1), ExponentProfile(2, 1.5))

    def test_Rjk_dual_example_and_displayed_form_gap(self):
        geom = Geometry(4, 2, 1)
        e = ExponentProfile(2, 0.0)
        # duality route vs the displayed forward-form expression (mpmath values)
        assert sharp_norm_Rjk_dual(geom, e) == pytest.approx(2.22144146907918312, rel=1e-14)
        assert dual_jk_displayed_form(geom, e) == pytest.approx(3.70814935460274384, rel=1e-14)

    @pytest.mark.parametrize("n,k,j", [(3, 1, 0), (4, 2, 1), (5, 3, 2), (6, 4, 1)])
    @pytest.mark.parametrize("p", [1, 1.5, 2, 3, 10, math.inf])
    def test_against_mpmath(self, n, k, j, p):
        e0 = ExponentProfile(p, 0.0)
        lo = k - n * e0.inv_p - j * e0.inv_p_prime
        for mu in (lo + 0.3, lo + 1.1, lo + 4.0):
            got = sharp_norm_Rjk(Geometry(n, k, j), ExponentProfile(p, mu))
            assert got == pytest.approx(float(mp_norm_jk(n, j, k, p, mu)), rel=1e-13)


admissible = st.tuples(
    st.integers(2, 6), st.integers(1, 5), st.integers(0, 4),
    st.sampled_from([1.0, 1.5, 2.0, 3.0, 10.0, math.inf]),
    st.floats(0.01, 5.0),
).filter(lambda t: t[2] < t[1] < t[0])


@given(admissible)
@settings(max_examples=300, deadline=None)
def test_reductions_property(t):
    n, k, j, p, margin = t
    e = ExponentProfile(p, 0.0)
    mu_f = k - n * e.inv_p - j * e.inv_p_prime + margin
    g = Geometry(n, k, j)
    # j = 0 reduction
    mu0 = k - n * e.inv_p + margin
    a = sharp_norm_Rjk(Geometry(n, k, 0), ExponentProfile(p, mu0))
    b = sharp_norm_Rk(Geometry(n, k), ExponentProfile(p, mu0))
    assert a == pytest.approx(b, rel=1e-12)
    # dual equals forward at (p', -nu, -mu)
    mu_d = (n - k) * e.inv_p_prime - margin
    ed = ExponentProfile(p, mu_d)
    nu_d = mu_d - (k - j) * ed.inv_p
    fwd = sharp_norm_Rjk(g, ExponentProfile(ed.p_prime, -nu_d))
    assert sharp_norm_Rjk_dual(g, ed) == pytest.approx(fwd, rel=1e-12)
    assert sharp_norm_Rjk(g, ExponentProfile(p, mu_f)) > 0


@given(st.integers(2, 6), st.integers(1, 5), st.floats(0.01, 5.0))
def test_p1_equals_lambda(n, k, margin):
    if not k < n:
        return
    mu = k - n + margin
    assert sharp_norm_Rk(Geometry(n, k), ExponentProfile(1, mu)) == pytest.approx(
        lambda_mu(Geometry(n, k), mu), rel=1e-12
    )


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, math.inf])
def test_monotone_divergence_along_slices(p):
    g = Geometry(4, 2, 1)
    e = ExponentProfile(p, 0.0)
    lo = g.k - g.n * e.inv_p - g.j * e.inv_p_prime
    hi = (g.n - g.k) * e.inv_p_prime
    gaps = [10.0**-m for m in range(0, 10)]
    fwd = [sharp_norm_Rjk(g, ExponentProfile(p, lo + d)) for d in gaps]
    assert all(b > a for a, b in zip(fwd, fwd[1:]))
    if not math.isinf(p):
        dual = [sharp_norm_Rjk_dual(g, ExponentProfile(p, hi - d)) for d in gaps]
        assert all(b > a for a, b in zip(dual, dual[1:]))


def test_no_overflow_large_parameters():
    for n in (10, 30, 50):
        for mu in (-0.9 * (n - 1) + 0.5, 0.0, 20.0, 40.0):
            if mu <= 1 - n:
                continue
            v = lambda_mu(Geometry(n, 1), mu)
            assert math.isfinite(v) and v > 0
            v = sharp_norm_Rk(Geometry(n, n - 1), ExponentProfile(2, max(mu, n - 1 - n / 2 + 0.1)))
            assert math.isfinite(v) and v > 0


class TestValidate:
    def test_examples(self):
        r = validate_parameters(Geometry(2, 1), ExponentProfile(2, 1.0), "forward-k")
        assert (r.nu, r.bounded, r.finite_ae) == (0.5, True, True)
        r = validate_parameters(Geometry(3, 1), ExponentProfile(1, -2.0), "forward-k")
        assert (r.nu, r.bounded, r.finite_ae) == (-2.0, False, True)
        r = validate_parameters(Geometry(2, 1), ExponentProfile(2, 0.0), "forward-k")
        assert (r.bounded, r.finite_ae) == (False, False)
        assert r.verdict == "inadmissible: mu <= k - n/p"

    def test_dual(self):
        r = validate_parameters(Geometry(3, 1), ExponentProfile(2, 0.5), "dual-k")
        assert r.nu == pytest.approx(0.0) and r.bounded and r.finite_ae is None
        r = validate_parameters(Geometry(4, 2, 1), ExponentProfile(2, 1.5), "dual-jk")
        assert r.nu == pytest.approx(1.0) and not r.bounded
