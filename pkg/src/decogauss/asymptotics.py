"""Strong-environment limits, the coherence-purity law and Lambda inference.

For large correlation ``gamma`` the coherence follows
``C ~ (1 + eps) ln(theta / mu)`` with
``theta = sqrt(tau0**2 / (2 sigma0**2 t**3 Lambda))``, which can be inverted
for the environment parameter Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .bath import ParticleSpec
from .errors import DomainError
from .evolution import EvolutionPoint

SQRT3 = np.sqrt(3.0)


@dataclass(frozen=True)
class AsymptoticReport:
    lx2_inf: float
    lp2_inf: float
    mu2_inf: float
    C_frozen: float


@dataclass(frozen=True)
class FitResult:
    epsilon: float
    theta: float
    rss: float
    n_points: int


def frozen_coherence(p: ParticleSpec, t):
    """Plateau of the coherence as Lambda -> inf; independent of gamma and ell0."""
    r = np.asarray(t, dtype=float) / p.tau0
    return np.log(SQRT3 / r + r / SQRT3)


def asymptotic_limits(p: ParticleSpec, t: float, lam: float) -> AsymptoticReport:
    """Leading large-Lambda behaviour at time ``t``, evaluated at ``lam``.

    The coherence lengths are returned in the same dimensionless units as
    :func:`~decogauss.observables.coherence_length_x`, i.e.
    ``lx2 -> 1 / (2 t Lambda sigma0**2)`` and
    ``lp2 -> 3 m**2 sigma0**2 / (2 hbar**2 t**3 Lambda)``.
    """
    if t <= 0:
        raise DomainError("t must be positive")
    if lam <= 0:
        raise DomainError("Lambda must be positive")
    s2 = p.sigma0**2
    return AsymptoticReport(
        lx2_inf=1 / (2 * t * lam * s2),
        lp2_inf=3 * p.m**2 * s2 / (2 * p.hbar**2 * t**3 * lam),
        mu2_inf=3 * p.m**2 / (4 * p.hbar**2 * t**4 * lam**2),
        C_frozen=float(frozen_coherence(p, t)),
    )


def _require_noise(e: EvolutionPoint):
    if np.any(np.asarray(e.Lt) <= 0):
        raise DomainError("Lambda * t must be positive")


def gamma_infinity_lengths(p: ParticleSpec, e: EvolutionPoint) -> Tuple[float, float]:
    """Coherence lengths (squared, dimensionless) in the limit gamma -> inf."""
    _require_noise(e)
    denom = 8 * p.sigma0**2 * e.Lt
    return 3 / denom, 3 * p.tau0**2 / (denom * e.t**2)


def theta(p: ParticleSpec, e: EvolutionPoint):
    _require_noise(e)
    return np.sqrt(p.tau0**2 / (2 * p.sigma0**2 * e.t**3 * e.lam))


def coherence_approx(mu, theta, epsilon=0.0):
    """``(1 + epsilon) ln(theta / mu)``; valid for mu << 1."""
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0) or np.any(mu >= theta):
        raise DomainError("need 0 < mu < theta")
    out = (1 + epsilon) * np.log(theta / mu)
    return out.item() if out.ndim == 0 else out


def fit_epsilon(points: Sequence[Tuple[float, float]], theta: float) -> FitResult:
    """Least-squares exponent correction for ``C = (1 + eps) ln(theta / mu)``.

    The model is linear in ``1 + eps`` so the minimiser is closed form.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        raise DomainError("need at least two (mu, C) points")
    mu, C = pts[:, 0], pts[:, 1]
    if np.any(mu <= 0) or np.any(mu >= theta):
        raise DomainError("every mu must satisfy 0 < mu < theta")
    L = np.log(theta / mu)
    slope = np.dot(C, L) / np.dot(L, L)
    resid = C - slope * L
    return FitResult(
        epsilon=float(slope - 1), theta=float(theta), rss=float(np.dot(resid, resid)), n_points=len(pts)
    )


def estimate_lambda(mu, C, p: ParticleSpec, t: float, epsilon: Optional[float] = None):
    """Environment parameter from measured purity and coherence.

    Without ``epsilon`` this is ``(1/(2 t sigma0**2)) (tau0 / (t mu e**C))**2``.
    With it, ``e**C`` is replaced by ``e**(C / (1 + epsilon))`` so the result
    inverts :func:`coherence_approx` exactly.
    """
    mu = np.asarray(mu, dtype=float)
    C = np.asarray(C, dtype=float)
    if np.any(mu <= 0) or np.any(mu >= 1):
        raise DomainError("mu must lie in (0, 1)")
    if np.any(C <= 0):
        raise DomainError("C must be positive")
    if t <= 0:
        raise DomainError("t must be positive")
    exponent = C if epsilon is None else C / (1 + epsilon)
    out = (p.tau0 / (t * mu * np.exp(exponent))) ** 2 / (2 * t * p.sigma0**2)
    return out.item() if out.ndim == 0 else out


def qubit_demo(r) -> Tuple[float, float]:
    """l1-norm coherence and the purity measure ``|r|`` of a qubit."""
    r = np.asarray(r, dtype=float)
    norm2 = float(np.dot(r, r))
    if norm2 > 1 + 1e-12:
        raise DomainError("Bloch vector longer than 1")
    return float(np.sqrt(max(norm2 - r[2] ** 2, 0.0))), float(np.sqrt(norm2))
