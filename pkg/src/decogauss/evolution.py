"""Evolved Gaussian density matrix in position and momentum representation.

The state after time ``t`` is

    rho(x, x') = sqrt(2 A1 / pi) exp[-A1 (x^2 + x'^2) - A2 (x - x')^2
                                     + i A3 (x^2 - x'^2)]

and its Fourier transform has the same shape with coefficients C1, C2, C3
(momentum in kg m/s, so the C's carry units of momentum^-2). Pointwise
evaluators work in log space and exponentiate once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .bath import HBAR, ParticleSpec
from .errors import DomainError


@dataclass(frozen=True)
class EvolutionPoint:
    """Elapsed time ``t`` (s) and decoherence rate ``lam`` (m^-2 s^-1)."""

    t: float
    lam: float = 0.0

    def __post_init__(self):
        if not np.all(np.asarray(self.t) >= 0):
            raise DomainError("t must be >= 0")
        if not np.all(np.asarray(self.lam) >= 0):
            raise DomainError("Lambda must be >= 0")

    @property
    def Lt(self):
        return self.lam * self.t


@dataclass(frozen=True)
class DensityCoeffs:
    A1: float
    A2: float
    A3: float
    Bsq: float
    C1: Optional[float] = None
    C2: Optional[float] = None
    C3: Optional[float] = None


def _require_positive_time(e: EvolutionPoint):
    if not np.all(np.asarray(e.t) > 0):
        raise DomainError("t must be > 0; use the closed-form t -> 0 limits instead")


def position_coeffs(p: ParticleSpec, e: EvolutionPoint) -> DensityCoeffs:
    """Coefficients A1, A2, A3 and B^2 of the position-space density matrix."""
    _require_positive_time(e)
    m, hb, s0, g = p.m, p.hbar, p.sigma0, p.gamma
    il2 = p.inv_ell0_sq
    t, Lt = e.t, e.Lt
    s2, s4 = s0**2, s0**4

    Bsq = 1 / (4 * s4) + il2 / (2 * s2) + Lt / (3 * s2) + (m / (2 * hb * t) + g / (2 * s2)) ** 2
    A1 = m**2 / (8 * hb**2 * t**2 * s2 * Bsq)
    A2 = (
        m**2 / (4 * hb**2 * t**2 * Bsq) * (il2 / 2 + Lt)
        + Lt / (12 * s2 * Bsq) * (1 / s2 + 2 * il2 + Lt)
        + m * e.lam * g / (4 * hb * s2 * Bsq)
        + Lt * g**2 / (12 * s4 * Bsq)
    )
    A3 = m / (4 * hb * t * s2 * Bsq) * (1 / (2 * s2) + il2 + Lt) + m * g / (
        8 * hb * t * s2 * Bsq
    ) * (m / (hb * t) + g / s2)
    return DensityCoeffs(A1=A1, A2=A2, A3=A3, Bsq=Bsq)


def momentum_coeffs(d: DensityCoeffs, hbar: float = HBAR) -> DensityCoeffs:
    """Fill in C1, C2, C3 from the position coefficients."""
    C1 = d.A1 / (4 * hbar**2 * (d.A1**2 + 2 * d.A1 * d.A2 + d.A3**2))
    return replace(d, C1=C1, C2=d.A2 / d.A1 * C1, C3=d.A3 / d.A1 * C1)


def density_coeffs(p: ParticleSpec, e: EvolutionPoint) -> DensityCoeffs:
    return momentum_coeffs(position_coeffs(p, e), p.hbar)


def log_rho_position(x, x_prime, d: DensityCoeffs):
    x = np.asarray(x, dtype=float)
    x_prime = np.asarray(x_prime, dtype=float)
    re = (
        0.5 * np.log(2 * d.A1 / np.pi)
        - d.A1 * (x**2 + x_prime**2)
        - d.A2 * (x - x_prime) ** 2
    )
    return re + 1j * d.A3 * (x**2 - x_prime**2)


def rho_position(x, x_prime, d: DensityCoeffs):
    return np.exp(log_rho_position(x, x_prime, d))


def log_rho_momentum(p, p_prime, d: DensityCoeffs):
    if d.C1 is None:
        raise DomainError("momentum coefficients missing; call momentum_coeffs first")
    p = np.asarray(p, dtype=float)
    p_prime = np.asarray(p_prime, dtype=float)
    re = (
        0.5 * np.log(2 * d.C1 / np.pi)
        - d.C1 * (p**2 + p_prime**2)
        - d.C2 * (p - p_prime) ** 2
    )
    return re - 1j * d.C3 * (p**2 - p_prime**2)


def rho_momentum(p, p_prime, d: DensityCoeffs):
    return np.exp(log_rho_momentum(p, p_prime, d))


def log_initial_state(x0, x0_prime, p: ParticleSpec):
    x0 = np.asarray(x0, dtype=float)
    x0_prime = np.asarray(x0_prime, dtype=float)
    s2 = p.sigma0**2
    return (
        -np.log(np.sqrt(np.pi) * p.sigma0)
        - (1 - 1j * p.gamma) * x0**2 / (2 * s2)
        - (1 + 1j * p.gamma) * x0_prime**2 / (2 * s2)
        - (x0 - x0_prime) ** 2 * p.inv_ell0_sq / 2
    )


def initial_state(x0, x0_prime, p: ParticleSpec):
    """Partially coherent, position-momentum correlated Gaussian at t = 0."""
    return np.exp(log_initial_state(x0, x0_prime, p))


def log_propagator_kernel(x, x_prime, x0, x0_prime, e: EvolutionPoint, m: float, hbar: float = HBAR):
    _require_positive_time(e)
    r = np.asarray(x, dtype=float) - np.asarray(x_prime, dtype=float)
    r0 = np.asarray(x0, dtype=float) - np.asarray(x0_prime, dtype=float)
    free = 1j * m / (2 * hbar * e.t) * ((x - x0) ** 2 - (x_prime - x0_prime) ** 2)
    decay = -e.Lt / 3 * (r**2 + r0**2 + r * r0)
    return np.log(m / (2 * np.pi * hbar * e.t)) + free + decay


def propagator_kernel(x, x_prime, x0, x0_prime, e: EvolutionPoint, m: float, hbar: float = HBAR):
    """Density-matrix propagator of the free particle under position decoherence.

    The first factor is the product of the free ket and bra kernels
    ``K(x, x0) K*(x', x0')``; the second suppresses off-diagonal transport.
    """
    return np.exp(log_propagator_kernel(x, x_prime, x0, x0_prime, e, m, hbar))
