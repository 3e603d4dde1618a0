import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from decogauss import (
    FULLERENE,
    CovarianceState,
    DomainError,
    EvolutionPoint,
    InvalidStateError,
    ParticleSpec,
    coherence_from_purity,
    coherence_length_p,
    coherence_length_x,
    coherence_report,
    covariance,
    dbar,
    position_coeffs,
    purity,
    relative_entropy_coherence,
    symplectic_nu,
    von_neumann_entropy,
)
from decogauss.observables import bose_entropy

PURE = ParticleSpec(m=FULLERENE.m, sigma0=FULLERENE.sigma0)
A = (FULLERENE.sigma0 / FULLERENE.ell0) ** 2

states = st.builds(
    lambda g, ell0, lam, t: (ParticleSpec(m=1.2e-24, sigma0=7.8e-9, ell0=ell0, gamma=g), EvolutionPoint(t, lam)),
    st.floats(-300, 300),
    st.one_of(st.just(math.inf), st.floats(1e-8, 1e-6)),
    st.one_of(st.just(0.0), st.floats(1e18, 1e24)),
    st.floats(1e-8, 5e-6),
)


class TestCovariance:
    @given(g=st.floats(-5, 5), t=st.floats(0, 2e-6))
    def test_pure_free_is_minimum_uncertainty(self, g, t):
        c = covariance(PURE.with_gamma(g), EvolutionPoint(t, 0.0))
        assert c.det == pytest.approx(0.25, rel=1e-14)
        assert c.s11 * c.s22 - c.s12**2 == pytest.approx(0.25, rel=1e-9)

    @given(states)
    def test_closed_form_determinant(self, state):
        c = covariance(*state)
        raw = c.s11 * c.s22 - c.s12**2
        # the raw product loses about eps * s11 * s22 to cancellation
        assert abs(c.det - raw) <= 1e-14 * c.s11 * c.s22 + 1e-15

    @pytest.mark.parametrize("g", [-3.0, 0.0, 3.0, 50.0])
    def test_initial_values(self, g):
        p = FULLERENE.with_gamma(g)
        c = covariance(p, EvolutionPoint(0.0, 1e22))
        np.testing.assert_allclose([c.s11, c.s22, c.s12], [0.5, (1 + g**2) / 2 + A, g / 2], rtol=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(states)
    def test_agrees_with_density_coefficients(self, state):
        # diagonal of the density matrix is a Gaussian of variance 1/(4 A1)
        p, e = state
        d = position_coeffs(p, e)
        c = covariance(p, e)
        np.testing.assert_allclose(c.s11, 1 / (4 * d.A1 * p.sigma0**2), rtol=1e-9)

    def test_free_spreading_law(self):
        u = np.linspace(0, 3, 7)
        for ui in u:
            c = covariance(PURE, EvolutionPoint(ui * PURE.tau0, 0.0))
            assert c.s11 == pytest.approx((1 + ui**2) / 2, rel=1e-13)

    def test_rejects_nonpositive_diagonal(self):
        with pytest.raises(InvalidStateError):
            CovarianceState(0.0, 1.0, 0.0)


class TestSymplectic:
    def test_vacuum(self):
        assert symplectic_nu(CovarianceState(0.5, 0.5, 0.0)) == pytest.approx(1.0)

    def test_det_one(self):
        assert symplectic_nu(CovarianceState(2.0, 1.0, 1.0)) == pytest.approx(2.0)

    def test_unphysical(self):
        with pytest.raises(InvalidStateError):
            symplectic_nu(CovarianceState(0.4, 0.5, 0.0))

    def test_nu_mu_reciprocal(self, grid_point):
        p, e = grid_point
        assert symplectic_nu(covariance(p, e)) * purity(p, e) == pytest.approx(1.0, abs=1e-9)


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(1.0) == 0.0

    def test_nu_two(self):
        mpmath.mp.dps = 30
        exact = 1.5 * mpmath.log(1.5) + 0.5 * mpmath.log(2)
        assert von_neumann_entropy(2.0) == pytest.approx(float(exact), rel=1e-14)
        assert von_neumann_entropy(2.0) == pytest.approx(0.95477, abs=1e-5)

    def test_nu_three(self):
        assert von_neumann_entropy(3.0) == pytest.approx(2 * math.log(2), rel=1e-14)

    def test_rejects_nu_below_one(self):
        with pytest.raises(InvalidStateError):
            von_neumann_entropy(0.9)

    @given(st.floats(1e-12, 1e8))
    def test_bose_entropy_matches_mpmath(self, x):
        mpmath.mp.dps = 50
        xm = mpmath.mpf(x)
        exact = (xm + 1) * mpmath.log(xm + 1) - xm * mpmath.log(xm)
        assert bose_entropy(x) == pytest.approx(float(exact), rel=1e-9)


class TestCoherence:
    def test_vacuum(self):
        assert relative_entropy_coherence(CovarianceState(0.5, 0.5, 0.0)) == 0.0

    @pytest.mark.parametrize("nu", [1.0, 1.5, 4.0, 30.0])
    def test_thermal_states_incoherent(self, nu):
        assert relative_entropy_coherence(CovarianceState(nu / 2, nu / 2, 0.0)) == pytest.approx(0.0, abs=1e-12)

    def test_pure_squeezed(self):
        c = CovarianceState(2.0, 0.125, 0.0)
        nbar = (2.0 + 0.125 - 1) / 2
        want = (nbar + 1) * math.log(nbar + 1) - nbar * math.log(nbar)
        assert relative_entropy_coherence(c) == pytest.approx(want, rel=1e-13)

    def test_non_negative_on_grid(self, grid_point):
        assert relative_entropy_coherence(covariance(*grid_point)) >= 0


class TestCoherenceLengths:
    @pytest.mark.parametrize("u", [0.0, 0.3, 1.0, 2.5])
    def test_pure_free_position(self, u):
        e = EvolutionPoint(u * PURE.tau0, 0.0)
        assert coherence_length_x(PURE, e) == pytest.approx((1 + u**2) / 2, rel=1e-12)

    @pytest.mark.parametrize("g", [-3.0, 0.0, 1.0, 7.0])
    def test_pure_free_momentum(self, g):
        assert coherence_length_p(PURE.with_gamma(g), EvolutionPoint(1e-6, 0.0)) == pytest.approx((1 + g**2) / 2, rel=1e-12)

    def test_initial_values(self):
        for g in (-3.0, 0.0, 3.0):
            p = FULLERENE.with_gamma(g)
            e = EvolutionPoint(0.0, 1e22)
            assert coherence_length_x(p, e) == pytest.approx(1 / (2 * (1 + 2 * A)), rel=1e-14)
            assert coherence_length_p(p, e) == pytest.approx(((1 + g**2) / 2 + A) / (1 + 2 * A), rel=1e-14)

    def test_continuous_at_zero_time(self):
        p = FULLERENE.with_gamma(3.0)
        a0 = coherence_length_x(p, EvolutionPoint(0.0, 1e22))
        a1 = coherence_length_x(p, EvolutionPoint(1e-15, 1e22))
        assert a1 == pytest.approx(a0, rel=1e-6)

    @settings(max_examples=200, deadline=None)
    @given(states)
    def test_antidiagonal_width(self, state):
        # |rho(x, -x)| = exp(-2 (A1 + 2 A2) x**2) up to normalisation
        p, e = state
        d = position_coeffs(p, e)
        np.testing.assert_allclose(coherence_length_x(p, e), 1 / (4 * (d.A1 + 2 * d.A2) * p.sigma0**2), rtol=1e-9)

    def test_large_lambda(self):
        p, t, lam = FULLERENE.with_gamma(3.0), 1e-6, 1e30
        e = EvolutionPoint(t, lam)
        assert coherence_length_x(p, e) * 2 * t * lam * p.sigma0**2 == pytest.approx(1.0, rel=1e-5)
        want = 3 * p.m**2 * p.sigma0**2 / (2 * p.hbar**2 * t**3 * lam)
        assert coherence_length_p(p, e) / want == pytest.approx(1.0, rel=1e-5)

    def test_momentum_symmetric_in_gamma_without_noise(self):
        e = EvolutionPoint(1e-6, 0.0)
        assert coherence_length_p(FULLERENE.with_gamma(3.0), e) == coherence_length_p(FULLERENE.with_gamma(-3.0), e)

    def test_anticorrelation_wins_under_strong_noise(self):
        e = EvolutionPoint(1e-6, 1e23)
        assert coherence_length_x(FULLERENE.with_gamma(-3.0), e) > coherence_length_x(FULLERENE, e)

    def test_dbar_infinite_for_pure_source(self):
        assert dbar(PURE, EvolutionPoint(1e-6, 1e21)) == math.inf
        assert np.isfinite(dbar(FULLERENE, EvolutionPoint(1e-6, 1e21)))


class TestPurity:
    @given(g=st.floats(-100, 100), t=st.floats(0, 1e-5))
    def test_pure_source_without_noise(self, g, t):
        assert purity(PURE.with_gamma(g), EvolutionPoint(t, 0.0)) == pytest.approx(1.0, rel=1e-15)

    @given(g=st.floats(-100, 100), t=st.floats(0, 1e-5))
    def test_mixed_source_constant_without_noise(self, g, t):
        mu = purity(FULLERENE.with_gamma(g), EvolutionPoint(t, 0.0))
        assert mu == pytest.approx((1 + 2 * A) ** -0.5, rel=1e-12)
        assert mu == pytest.approx(0.976518, abs=1e-6)

    def test_table_row(self):
        mu = purity(FULLERENE.with_gamma(300.0), EvolutionPoint(1e-6, 1e22))
        assert mu == pytest.approx(2.5533e-3, rel=1e-4)
        assert abs(mu / 2.6e-3 - 1) < 0.3

    @pytest.mark.parametrize("g", [-3.0, 0.0, 3.0, 50.0])
    def test_decreasing_in_lambda(self, g):
        lams = np.concatenate([[0.0], np.geomspace(1e18, 1e26, 60)])
        mu = purity(FULLERENE.with_gamma(g), EvolutionPoint(1e-6, lams))
        assert np.all(np.diff(mu) < 0)

    @pytest.mark.parametrize("g", [-3.0, 0.0, 3.0])
    def test_coherence_decreasing_in_lambda(self, g):
        # Expected to fail for gamma = 0 and 3: the exact coherence dips
        # below its frozen value before climbing back to it.
        lams = np.geomspace(1e19, 1e24, 60)
        C = relative_entropy_coherence(covariance(FULLERENE.with_gamma(g), EvolutionPoint(1e-6, lams)))
        assert np.all(np.diff(C) <= 0)

    @pytest.mark.parametrize(
        "g,lam_min,C_min",
        # minima on the 60-point grid, from a 40-digit evaluation
        [(0.0, 1.3664483492953244e22, 0.526794868161365), (3.0, 3.101168926574775e23, 0.6542979489100732)],
    )
    def test_coherence_undershoot(self, g, lam_min, C_min):
        lams = np.geomspace(1e19, 1e24, 60)
        C = relative_entropy_coherence(covariance(FULLERENE.with_gamma(g), EvolutionPoint(1e-6, lams)))
        i = np.argmin(C)
        assert lams[i] == pytest.approx(lam_min, rel=1e-12)
        assert C[i] == pytest.approx(C_min, rel=1e-12)
        assert C[-1] > C[i]


class TestCoherenceFromPurity:
    @settings(max_examples=300, deadline=None)
    @given(states)
    def test_matches_covariance_route(self, state):
        p, e = state
        mu = purity(p, e)
        assume(mu < 1 - 1e-9)
        direct = relative_entropy_coherence(covariance(p, e))
        via = coherence_from_purity(mu, coherence_length_x(p, e), coherence_length_p(p, e))
        assert via == pytest.approx(direct, rel=1e-9, abs=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(states)
    def test_length_identities(self, state):
        p, e = state
        c = covariance(p, e)
        mu = purity(p, e)
        np.testing.assert_allclose(c.s11 * mu**2, coherence_length_x(p, e), rtol=1e-9)
        np.testing.assert_allclose(c.s22 * mu**2, coherence_length_p(p, e), rtol=1e-9)

    def test_table_row(self):
        p, e = FULLERENE.with_gamma(300.0), EvolutionPoint(1e-6, 1e22)
        C = coherence_from_purity(purity(p, e), coherence_length_x(p, e), coherence_length_p(p, e))
        assert abs(C - 5.9) < 0.3

    def test_continuous_at_pure_limit(self):
        lx2, lp2 = 1.3, 0.9
        nbar = (lx2 + lp2 - 1) / 2
        want = (nbar + 1) * math.log(nbar + 1) - nbar * math.log(nbar)
        assert coherence_from_purity(1.0, lx2, lp2) == pytest.approx(want, rel=1e-14)
        assert coherence_from_purity(1 - 1e-7, lx2, lp2) == pytest.approx(want, rel=1e-5)

    @pytest.mark.parametrize("mu,lx2,lp2", [(0.0, 1, 1), (1.2, 1, 1), (0.5, 0.1, 0.1)])
    def test_domain(self, mu, lx2, lp2):
        with pytest.raises(DomainError):
            coherence_from_purity(mu, lx2, lp2)


def test_report_bundle():
    r = coherence_report(FULLERENE.with_gamma(3.0), EvolutionPoint(1e-6, 1e22))
    assert 0 < r.mu < 1 and r.C > 0 and r.S > 0 and r.Dbar > 0
