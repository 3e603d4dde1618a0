import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decogauss import (
    FULLERENE,
    DomainError,
    EvolutionPoint,
    asymptotic_limits,
    coherence_approx,
    coherence_length_p,
    coherence_length_x,
    covariance,
    estimate_lambda,
    fit_epsilon,
    frozen_coherence,
    gamma_infinity_lengths,
    purity,
    qubit_demo,
    relative_entropy_coherence,
    theta,
)

REF = EvolutionPoint(1e-6, 1e22)
TABLE_MU = [15.1e-3, 7.2e-3, 5.2e-3, 3.8e-3, 3.0e-3, 2.6e-3]
TABLE_C = [4.1, 4.8, 5.2, 5.5, 5.7, 5.9]


def exact_points(g_lo, g_hi=300.0, n=51):
    gs = np.linspace(g_lo, g_hi, n)
    p = FULLERENE.with_gamma(gs)
    e = EvolutionPoint(np.full(n, 1e-6), np.full(n, 1e22))
    return np.column_stack([purity(p, e), relative_entropy_coherence(covariance(p, e))])


class TestFrozenCoherence:
    def test_fullerene_value(self):
        r = 1e-6 / FULLERENE.tau0
        assert frozen_coherence(FULLERENE, 1e-6) == pytest.approx(math.log(math.sqrt(3) / r + r / math.sqrt(3)), rel=1e-15)
        assert frozen_coherence(FULLERENE, 1e-6) == pytest.approx(0.7095, abs=1e-4)

    def test_symmetric_point(self):
        assert frozen_coherence(FULLERENE, math.sqrt(3) * FULLERENE.tau0) == pytest.approx(math.log(2), rel=1e-14)

    @pytest.mark.parametrize("t", [0.5e-6, 1e-6, 2e-6])
    @pytest.mark.parametrize("g", [-3.0, 0.0, 3.0])
    def test_full_pipeline_freezes(self, t, g):
        C = relative_entropy_coherence(covariance(FULLERENE.with_gamma(g), EvolutionPoint(t, 1e28)))
        assert abs(C - frozen_coherence(FULLERENE, t)) < 1e-3

    @pytest.mark.parametrize("t", [0.5e-6, 1e-6, 2e-6])
    def test_derivative_vanishes(self, t):
        p = FULLERENE.with_gamma(3.0)
        h = 1e26
        C = [relative_entropy_coherence(covariance(p, EvolutionPoint(t, 1e28 + s * h))) for s in (-1, 1)]
        assert abs(C[1] - C[0]) / (2 * h) < 1e-31


class TestLimits:
    def test_leading_terms(self):
        p, t, lam = FULLERENE.with_gamma(3.0), 1e-6, 1e30
        e = EvolutionPoint(t, lam)
        r = asymptotic_limits(p, t, lam)
        assert coherence_length_x(p, e) / r.lx2_inf == pytest.approx(1.0, rel=1e-5)
        assert coherence_length_p(p, e) / r.lp2_inf == pytest.approx(1.0, rel=1e-5)
        assert purity(p, e) ** 2 / r.mu2_inf == pytest.approx(1.0, rel=1e-5)
        assert r.C_frozen == frozen_coherence(p, t)

    def test_domain(self):
        with pytest.raises(DomainError):
            asymptotic_limits(FULLERENE, 1e-6, 0.0)


class TestGammaInfinity:
    def test_reference_values(self):
        lx2, lp2 = gamma_infinity_lengths(FULLERENE, REF)
        assert lx2 == pytest.approx(0.6164, abs=1e-4)
        assert lp2 == pytest.approx(0.2954, abs=1e-4)

    def test_ratio_and_scaling(self):
        lx2, lp2 = gamma_infinity_lengths(FULLERENE, REF)
        assert lp2 / lx2 == pytest.approx((FULLERENE.tau0 / 1e-6) ** 2, rel=1e-14)
        lx2b, lp2b = gamma_infinity_lengths(FULLERENE, EvolutionPoint(1e-6, 2e22))
        np.testing.assert_allclose([lx2b, lp2b], [lx2 / 2, lp2 / 2], rtol=1e-14)

    def test_matches_large_gamma(self):
        p = FULLERENE.with_gamma(1e6)
        lx2, lp2 = gamma_infinity_lengths(FULLERENE, REF)
        assert coherence_length_x(p, REF) == pytest.approx(lx2, rel=1e-4)
        assert coherence_length_p(p, REF) == pytest.approx(lp2, rel=1e-4)

    def test_needs_noise(self):
        with pytest.raises(DomainError):
            gamma_infinity_lengths(FULLERENE, EvolutionPoint(1e-6, 0.0))


class TestTheta:
    def test_reference(self):
        assert theta(FULLERENE, REF) == pytest.approx(0.6276, abs=1e-4)

    def test_scaling(self):
        assert theta(FULLERENE, EvolutionPoint(1e-6, 4e22)) == pytest.approx(theta(FULLERENE, REF) / 2, rel=1e-14)

    def test_large_gamma_identity(self):
        g, t, lam = 1e6, 1e-6, 1e22
        mu = math.sqrt(FULLERENE.tau0**2 / (2 * FULLERENE.sigma0**2 * t**3 * lam * g**2))
        assert mu * math.exp(math.log(g)) == pytest.approx(theta(FULLERENE, REF), rel=1e-12)


class TestCoherenceApprox:
    def test_table_rows(self):
        assert abs(coherence_approx(2.6e-3, 0.6276, 0.069) - 5.9) < 0.1
        assert coherence_approx(2.6e-3, 0.6276, 0.069) == pytest.approx(5.865, abs=1e-3)
        assert abs(coherence_approx(15.1e-3, 0.6276, 0.069) - 4.1) < 0.15
        assert coherence_approx(15.1e-3, 0.6276, 0.069) == pytest.approx(3.984, abs=1e-3)

    def test_unit_log(self):
        assert coherence_approx(0.5 / math.e, 0.5) == pytest.approx(1.0, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            coherence_approx(0.7, 0.6)


class TestFit:
    def test_exact_recovery(self):
        mu = np.geomspace(1e-3, 1e-1, 10)
        fit = fit_epsilon(np.column_stack([mu, coherence_approx(mu, 0.6)]), 0.6)
        assert fit.epsilon == pytest.approx(0.0, abs=1e-14)
        assert fit.rss == pytest.approx(0.0, abs=1e-25)

    @given(st.floats(-0.5, 0.5))
    def test_recovers_any_epsilon(self, eps):
        mu = np.geomspace(1e-4, 1e-2, 7)
        fit = fit_epsilon(np.column_stack([mu, coherence_approx(mu, 0.6, eps)]), 0.6)
        assert fit.epsilon == pytest.approx(eps, abs=1e-12)

    def test_table_points(self):
        fit = fit_epsilon(list(zip(TABLE_MU, TABLE_C)), 0.6276)
        assert fit.epsilon == pytest.approx(0.0777, abs=1e-4)
        assert abs(fit.epsilon - 0.069) <= 0.015

    def test_exact_pipeline(self):
        fit = fit_epsilon(exact_points(50.0), theta(FULLERENE, REF))
        assert 0.05 <= fit.epsilon <= 0.09
        assert fit.epsilon == pytest.approx(0.07447, abs=1e-4)

    def test_residual_falls_with_purity(self):
        th = theta(FULLERENE, REF)
        rss = [fit_epsilon(exact_points(lo), th).rss for lo in (50.0, 100.0, 150.0, 200.0)]
        assert np.all(np.diff(rss) < 0)

    def test_needs_two_points(self):
        with pytest.raises(DomainError):
            fit_epsilon([(1e-3, 5.0)], 0.6)


class TestEstimateLambda:
    @settings(deadline=None)
    @given(mu=st.floats(1e-4, 0.5), lam=st.floats(1e19, 1e25), eps=st.one_of(st.none(), st.floats(0, 0.2)))
    def test_round_trip(self, mu, lam, eps):
        th = theta(FULLERENE, EvolutionPoint(1e-6, lam))
        if mu >= th:
            return
        C = coherence_approx(mu, th, eps or 0.0)
        assert estimate_lambda(mu, C, FULLERENE, 1e-6, eps) == pytest.approx(lam, rel=1e-10)

    def test_table_row_raw(self):
        lam = estimate_lambda(2.6e-3, 5.9, FULLERENE, 1e-6)
        assert lam == pytest.approx(4.4e21, rel=0.02)

    def test_table_row_corrected(self):
        lam = estimate_lambda(2.6e-3, 5.9, FULLERENE, 1e-6, epsilon=0.069)
        assert abs(lam / 1e22 - 1) < 0.1

    @pytest.mark.parametrize("mu,C", [(0.0, 1.0), (1.0, 1.0), (0.1, 0.0)])
    def test_domain(self, mu, C):
        with pytest.raises(DomainError):
            estimate_lambda(mu, C, FULLERENE, 1e-6)


class TestQubit:
    @pytest.mark.parametrize("z", [-1.0, -0.3, 0.0, 0.6, 1.0])
    def test_axis(self, z):
        assert qubit_demo((0.0, 0.0, z)) == (0.0, abs(z))

    @pytest.mark.parametrize("r", [0.0, 0.25, 1.0])
    def test_equator(self, r):
        C, mu = qubit_demo((r, 0.0, 0.0))
        assert C == pytest.approx(r) and mu == pytest.approx(r)

    def test_outside_ball(self):
        with pytest.raises(DomainError):
            qubit_demo((1.0, 0.5, 0.0))
