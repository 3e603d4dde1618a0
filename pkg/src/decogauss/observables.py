"""Second moments, entropies, coherence and purity of the evolved state.

Moments are dimensionless: positions in units of sigma0, momenta in units
of hbar/sigma0, so the vacuum has s11 = s22 = 1/2 and nu = 2 sqrt(det) = 1.
Logarithms are natural.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bath import ParticleSpec
from .errors import DomainError, InvalidStateError
from .evolution import EvolutionPoint

NU_TOL = 1e-12
_XLOGX_ZERO = 1e-14
_SERIES_BELOW = 1e-6


def _xlogx(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x < _XLOGX_ZERO, 1.0, x)
    return np.where(x < _XLOGX_ZERO, 0.0, safe * np.log(safe))


def _one_plus_x_log(x):
    """(1 + x) ln(1 + x), with a series below 1e-6."""
    x = np.asarray(x, dtype=float)
    series = x + x**2 / 2 - x**3 / 6
    return np.where(x < _SERIES_BELOW, series, (1 + x) * np.log1p(x))


def bose_entropy(x):
    """g(x) = (x + 1) ln(x + 1) - x ln x, the entropy of a thermal mode with
    mean occupation x. Uses ln(1 + x) + x ln(1 + 1/x) above x = 1, where the
    direct form cancels badly."""
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    big = np.where(x > 1, x, 2.0)
    stable = np.log1p(big) + big * np.log1p(1 / big)
    return np.where(x > 1, stable, _one_plus_x_log(x) - _xlogx(x))


def _scalar(v):
    v = np.asarray(v)
    return v.item() if v.ndim == 0 else v


@dataclass(frozen=True)
class CovarianceState:
    """Dimensionless second moments and first moments ``d``.

    ``exact_det`` may carry a determinant computed without the cancellation
    in ``s11 s22 - s12**2``, which loses digits when the entries are large.
    """

    s11: float
    s22: float
    s12: float
    d: tuple = (0.0, 0.0)
    exact_det: Optional[float] = None

    def __post_init__(self):
        if not (np.all(np.asarray(self.s11) > 0) and np.all(np.asarray(self.s22) > 0)):
            raise InvalidStateError("diagonal second moments must be positive")

    @property
    def det(self):
        if self.exact_det is not None:
            return self.exact_det
        return self.s11 * self.s22 - self.s12**2

    @property
    def nu(self):
        return symplectic_nu(self)

    @property
    def nbar(self):
        d2 = self.d[0] ** 2 + self.d[1] ** 2
        return (self.s11 + self.s22 + d2 - 1) / 2

    def matrix(self):
        return np.array([[self.s11, self.s12], [self.s12, self.s22]])


@dataclass(frozen=True)
class CoherenceReport:
    C: float
    S: float
    lx2: float
    lp2: float
    mu: float
    Dbar: float


def covariance(p: ParticleSpec, e: EvolutionPoint) -> CovarianceState:
    """Dimensionless second moments at time ``t`` (``t = 0`` allowed).

    Written in terms of ``u = t / tau0`` and ``L = Lambda t sigma0**2``; this
    is the expanded form of the familiar
    ``s11 = u**2 [1/2 + 2 (1/(2u) + gamma/2)**2 + sigma0**2/ell0**2 + 2L/3]``.
    """
    g = p.gamma
    a = p.sigma0**2 * p.inv_ell0_sq
    u = e.t / p.tau0
    L = e.Lt * p.sigma0**2
    pp = (1 + g**2) / 2 + a
    s11 = 0.5 + g * u + u**2 * pp + 2 * u**2 * L / 3
    s22 = pp + 2 * L
    s12 = g / 2 + u * pp + u * L
    # 1 + g u + (2/3) u^2 pp > 0 for every g, so no cancellation below
    det = (1 + 2 * a + 4 * L * (1 + g * u + 2 * u**2 * pp / 3) + 4 * u**2 * L**2 / 3) / 4
    return CovarianceState(_scalar(s11), _scalar(s22), _scalar(s12), exact_det=_scalar(det))


def symplectic_nu(c: CovarianceState):
    det = np.asarray(c.det)
    if np.any(det <= 0):
        raise InvalidStateError("covariance determinant must be positive")
    nu = 2 * np.sqrt(det)
    if np.any(nu < 1 - NU_TOL):
        raise InvalidStateError(f"symplectic eigenvalue {np.min(nu)} violates nu >= 1")
    return _scalar(nu)


def von_neumann_entropy(nu):
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1 - NU_TOL):
        raise InvalidStateError("nu < 1 is unphysical")
    return _scalar(bose_entropy((nu - 1) / 2))


def relative_entropy_coherence(c: CovarianceState):
    """Relative entropy of coherence in the Fock basis:
    ``g(nbar) - g((nu - 1)/2)`` with g the thermal-mode entropy."""
    nu = np.asarray(symplectic_nu(c))
    nbar = np.asarray(c.nbar)
    if np.any(nbar < (nu - 1) / 2 - NU_TOL * np.maximum(1, nu)):
        raise InvalidStateError("mean occupation below (nu - 1)/2; reference thermal state undefined")
    return _scalar(np.maximum(bose_entropy(nbar) - bose_entropy((nu - 1) / 2), 0.0))


def _dbar_over_ell0_sq(p: ParticleSpec, e: EvolutionPoint):
    m, hb, s0, g = p.m, p.hbar, p.sigma0, p.gamma
    il2 = p.inv_ell0_sq
    t, lam = e.t, e.lam
    return (
        4 * hb**2 * lam**2 * s0**2 * t**4
        + 12 * t * lam * (
            m**2 * s0**4
            + t * hb * s0**2 * (m * g + 2 * t * hb * il2 / 3)
            + t**2 * hb**2 * (g**2 + 1) / 3
        )
        + 3 * m**2 * s0**2 * (1 + 2 * s0**2 * il2)
    )


def dbar(p: ParticleSpec, e: EvolutionPoint):
    """Common denominator of both coherence lengths (infinite when ell0 is)."""
    with np.errstate(invalid="ignore"):
        return _scalar(np.asarray(p.ell0, dtype=float) ** 2 * _dbar_over_ell0_sq(p, e))


def coherence_length_x(p: ParticleSpec, e: EvolutionPoint):
    """Squared position coherence length in units of sigma0**2.

    Numerator and denominator are both divided by ell0**2, and the
    ``(3 tau0 / 4t)(2 gamma + tau0/t)`` term is multiplied through by
    ``t**2``, so ``ell0 = inf`` and ``t = 0`` need no special cases.
    At ``t = 0`` this gives ``1 / (2 (1 + 2 sigma0**2/ell0**2))``.
    """
    hb, s0, g = p.hbar, p.sigma0, p.gamma
    il2 = p.inv_ell0_sq
    t, tau = e.t, p.tau0
    num = 2 * hb**2 * t**2 * (1.5 * il2 + t * e.lam + 0.75 * (1 + g**2) / s0**2) + (
        1.5 * hb**2 * tau / s0**2
    ) * (2 * g * t + tau)
    return _scalar(num / _dbar_over_ell0_sq(p, e))


def coherence_length_p(p: ParticleSpec, e: EvolutionPoint):
    """Squared momentum coherence length in units of (hbar/sigma0)**2."""
    s0 = p.sigma0
    num = 1.5 * p.m**2 * s0**4 * (2 * p.inv_ell0_sq + (1 + p.gamma**2) / s0**2 + 4 * e.t * e.lam)
    return _scalar(num / _dbar_over_ell0_sq(p, e))


def inverse_purity_squared(p: ParticleSpec, e: EvolutionPoint):
    """mu**-2 = 4 det(sigma) as a polynomial in t."""
    m, hb, s0, g = p.m, p.hbar, p.sigma0, p.gamma
    a = s0**2 * p.inv_ell0_sq
    t, lam = e.t, e.lam
    return (
        1
        + 2 * a
        + 4 * s0**2 * lam * t
        + 4 * g * lam * hb / m * t**2
        + 2 * hb * lam * (2 * g**2 + 2 + 4 * a) / (3 * p.tau0 * m) * t**3
        + 4 * lam**2 * hb**2 / (3 * m**2) * t**4
    )


def purity(p: ParticleSpec, e: EvolutionPoint):
    """tr(rho^2); equals 1 only for a pure source without environment."""
    return _scalar(inverse_purity_squared(p, e) ** -0.5)


def coherence_from_purity(mu, lx2, lp2):
    """Relative entropy of coherence from purity and the two coherence lengths.

    Uses ``nu = 1/mu`` and ``nbar = (lx2 + lp2) / (2 mu**2) - 1/2``. At
    ``mu == 1`` the entropy part vanishes and only ``g(nbar)`` remains.
    """
    mu = np.asarray(mu, dtype=float)
    s = np.asarray(lx2, dtype=float) + np.asarray(lp2, dtype=float)
    if np.any(mu <= 0) or np.any(mu > 1):
        raise DomainError("purity must lie in (0, 1]")
    pure = mu >= 1
    if np.any((s <= mu**2) & ~pure):
        raise DomainError("lx2 + lp2 must exceed mu**2")
    m_ = np.where(pure, 0.5, mu)
    q = s / (2 * m_**2)
    entropy_part = 0.5 * (
        np.log(4.0)
        + 2 * np.log(m_)
        + (1 - m_) / m_ * np.log1p(-m_)
        - (1 + m_) / m_ * np.log1p(m_)
    )
    mixing_part = q * (np.log1p(m_**2 / s) - np.log1p(-(m_**2) / s))
    occupation_part = 0.5 * np.log((q - 0.5) * (q + 0.5))
    general = entropy_part + mixing_part + occupation_part
    return _scalar(np.where(pure, bose_entropy((s - 1) / 2), general))


def coherence_report(p: ParticleSpec, e: EvolutionPoint) -> CoherenceReport:
    c = covariance(p, e)
    nu = symplectic_nu(c)
    return CoherenceReport(
        C=relative_entropy_coherence(c),
        S=von_neumann_entropy(nu),
        lx2=coherence_length_x(p, e),
        lp2=coherence_length_p(p, e),
        mu=purity(p, e),
        Dbar=dbar(p, e),
    )
