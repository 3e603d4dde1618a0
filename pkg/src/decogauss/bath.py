"""Particle, source and environment parameters.

All dimensional quantities are SI. ``ell0 = inf`` is a legal value and
means a perfectly collimated (pure) source; every downstream formula uses
``1 / ell0**2 == 0`` in that case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError

HBAR = 1.054571817e-34
KB = 1.380649e-23


def _require(cond, message):
    if not np.all(cond):
        raise DomainError(message)


@dataclass(frozen=True)
class ParticleSpec:
    """Particle and source parameters.

    ``gamma`` sets the initial position-momentum covariance
    ``sigma_xp = hbar * gamma / 2``. Fields may hold numpy arrays, in which
    case every closed form broadcasts over them.
    """

    m: float
    sigma0: float
    ell0: float = math.inf
    gamma: float = 0.0
    hbar: float = HBAR
    kB: float = KB

    def __post_init__(self):
        _require(np.asarray(self.m) > 0, "mass must be positive")
        _require(np.asarray(self.sigma0) > 0, "sigma0 must be positive")
        _require(np.asarray(self.ell0) > 0, "ell0 must be positive (inf allowed)")
        _require(np.isfinite(self.gamma), "gamma must be finite")
        _require(np.asarray(self.hbar) > 0, "hbar must be positive")

    @property
    def inv_ell0_sq(self):
        return 1.0 / np.asarray(self.ell0, dtype=float) ** 2

    @property
    def tau0(self):
        return self.m * self.sigma0**2 / self.hbar

    def with_gamma(self, gamma) -> "ParticleSpec":
        return ParticleSpec(self.m, self.sigma0, self.ell0, gamma, self.hbar, self.kB)


@dataclass(frozen=True)
class TimeScales:
    tau0: float

    def __post_init__(self):
        _require(np.asarray(self.tau0) > 0, "tau0 must be positive")


def tau0(p: ParticleSpec) -> TimeScales:
    """Free-spreading time ``m sigma0**2 / hbar``."""
    return TimeScales(p.m * p.sigma0**2 / p.hbar)


@dataclass(frozen=True)
class ScatteringGas:
    """Dilute gas scattering off the particle.

    T in K, M gas-molecule mass in kg, N number density in m^-3 and w the
    size of the scattered particle in m.
    """

    T: float
    M: float
    N: float
    w: float

    def __post_init__(self):
        for name in ("T", "M", "N", "w"):
            _require(np.asarray(getattr(self, name)) >= 0, f"{name} must be >= 0")


@dataclass(frozen=True)
class OhmicBath:
    """Oscillator bath with Ohmic spectral density and Lorentz-Drude cutoff."""

    lambda0: float
    Delta: float
    Omega: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        _require(np.asarray(self.lambda0) >= 0, "lambda0 must be >= 0")
        _require(np.asarray(self.Delta) > 0, "cutoff Delta must be positive")
        _require(np.asarray(self.Omega) >= 0, "Omega must be >= 0")
        _require(np.asarray(self.T) >= 0, "T must be >= 0")


@dataclass(frozen=True)
class BathSpec:
    """Environment, given by exactly one of three descriptions."""

    lambda_direct: Optional[float] = None
    scattering: Optional[ScatteringGas] = None
    ohmic: Optional[OhmicBath] = None
    kB: float = field(default=KB, repr=False)
    hbar: float = field(default=HBAR, repr=False)

    def __post_init__(self):
        given = [v is not None for v in (self.lambda_direct, self.scattering, self.ohmic)]
        if sum(given) != 1:
            raise DomainError("BathSpec needs exactly one of lambda_direct, scattering, ohmic")
        if self.lambda_direct is not None:
            _require(np.asarray(self.lambda_direct) >= 0, "Lambda must be >= 0")

    def decoherence_rate(self, m: Optional[float] = None) -> float:
        """Return Lambda in m^-2 s^-1. ``m`` is needed for the Ohmic variant."""
        if self.lambda_direct is not None:
            return self.lambda_direct
        if self.scattering is not None:
            return lambda_from_scattering(self.scattering, hbar=self.hbar, kB=self.kB)
        if m is None:
            raise DomainError("the Ohmic bath needs the particle mass")
        return ohmic_coefficients(self.ohmic, m, hbar=self.hbar, kB=self.kB)["Lambda"]


def lambda_from_scattering(s: ScatteringGas, hbar=HBAR, kB=KB):
    """Localization rate from gas scattering,
    ``(8 / 3 hbar**2) sqrt(2 pi M) (kB T)**1.5 N w**2``."""
    return (8.0 / (3.0 * hbar**2)) * np.sqrt(2.0 * np.pi * s.M) * (kB * s.T) ** 1.5 * s.N * s.w**2


def ohmic_coefficients(o: OhmicBath, m, hbar=HBAR, kB=KB):
    """Damping ``lambda`` and decoherence ``Lambda`` for an Ohmic bath.

    ``Lambda = (m lambda0 Omega / hbar) Delta**2 / (Delta**2 + Omega**2)
    * coth(hbar Omega / 2 kB T)``; the ``1/hbar`` makes the units m^-2 s^-1
    and makes the ``Omega -> 0`` limit continuous with the branch below.

    With ``Omega == 0`` the free-particle, high-temperature branch is used:
    ``lambda = lambda0`` and ``Lambda = 2 m lambda0 kB T / hbar**2``.
    """
    if o.Omega == 0:
        if o.T <= 0:
            raise DomainError("free-particle limit needs T > 0 (hbar*Omega << kB*T)")
        return {"lambda": o.lambda0, "Lambda": 2.0 * m * o.lambda0 * kB * o.T / hbar**2}
    ratio = o.Delta**2 / (o.Delta**2 + o.Omega**2)
    if o.T == 0:
        coth = 1.0
    else:
        coth = 1.0 / np.tanh(hbar * o.Omega / (2.0 * kB * o.T))
    return {
        "lambda": ratio * o.lambda0,
        "Lambda": m * o.lambda0 * o.Omega * ratio * coth / hbar,
    }


# C60 molecules in air at room temperature.
FULLERENE = ParticleSpec(m=1.2e-24, sigma0=7.8e-9, ell0=50e-9)
AIR = dict(T=300.0, M=5.0e-26, w=7e-10)
