"""Uniform grids and sampled density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bath import ParticleSpec
from ..errors import ConfigError, ResolutionError
from ..evolution import EvolutionPoint
from ..observables import covariance
from .report import tolerances

MIN_POINTS = 64
EXTENT_SIGMAS = 8.0


@dataclass(frozen=True)
class Grid2D:
    """``n`` points per axis on ``[-L, L)``; ``x_i = (i - n/2) dx``.

    The point set is closed under ``x -> -x`` except for the first point,
    which keeps anti-diagonal slices and FFT momenta on the same lattice.
    """

    n: int
    L: float

    def __post_init__(self):
        if self.n < MIN_POINTS or self.n & (self.n - 1):
            raise ConfigError(f"grid size must be a power of two >= {MIN_POINTS}, got {self.n}")
        if not self.L > 0:
            raise ConfigError("grid half-extent must be positive")

    @property
    def dx(self):
        return 2 * self.L / self.n

    @property
    def x(self):
        return (np.arange(self.n) - self.n // 2) * self.dx

    def momenta(self, hbar):
        """Momentum lattice matching :attr:`x` after an FFT and fftshift."""
        dp = 2 * np.pi * hbar / (self.n * self.dx)
        return (np.arange(self.n) - self.n // 2) * dp, dp


def default_grid(p: ParticleSpec, e: EvolutionPoint, n: int = 1024) -> Grid2D:
    """Conservative envelope ``L = 10 sigma0 max(1, t/tau0) (1 + |gamma|)``."""
    L = 10 * p.sigma0 * max(1.0, e.t / p.tau0) * (1 + abs(p.gamma))
    return Grid2D(n, L)


def check_extent(p: ParticleSpec, e: EvolutionPoint, g: Grid2D):
    """Refuse grids that do not cover eight position standard deviations."""
    c = covariance(p, e)
    required = EXTENT_SIGMAS * p.sigma0 * np.sqrt(c.s11)
    if g.L < required:
        raise ResolutionError(
            f"grid half-extent {g.L:.3e} m is below the required {required:.3e} m", required=required
        )


@dataclass
class GridDensityMatrix:
    grid: Grid2D
    values: np.ndarray
    t: float

    def trace(self):
        return float(np.real(np.trace(self.values)) * self.grid.dx)

    def hermitian_residual(self):
        v = self.values
        return float(np.max(np.abs(v - v.conj().T)) / np.max(np.abs(v)))

    def purity(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx**2)

    def validate(self):
        tol = tolerances()
        res = self.hermitian_residual()
        if res > tol["grid_hermitian"]:
            raise ConfigError(f"density matrix is not Hermitian (residual {res:.2e})")
        tr = self.trace()
        if abs(tr - 1) > tol["grid_trace"]:
            raise ConfigError(f"density matrix trace {tr:.9f} differs from 1")
        return self
