"""Split-step integration of the decoherence master equation on a grid.

Position representation:

    d rho / dt = (i hbar / 2m)(d_x^2 - d_x'^2) rho - Lambda (x - x')^2 rho

Each step applies half a decoherence step (an exact multiplier), a full
kinetic step (exact in Fourier space) and another half decoherence step,
so the only error is the O(dt^2) splitting error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..bath import ParticleSpec
from ..errors import DomainError, ResolutionError
from ..evolution import initial_state
from .grid import Grid2D, GridDensityMatrix
from .report import tolerances

EDGE_BAND = 0.9


@dataclass
class Trajectory:
    times: np.ndarray
    trace: np.ndarray
    purity: np.ndarray
    snapshots: List[GridDensityMatrix] = field(default_factory=list)

    @property
    def final(self) -> GridDensityMatrix:
        return self.snapshots[-1]


def nyquist_fraction(values: np.ndarray) -> float:
    """Share of spectral weight in the outer 10% of either frequency axis."""
    n = values.shape[0]
    spec = np.abs(np.fft.fft2(values)) ** 2
    f = np.abs(np.fft.fftfreq(n)) * 2  # 1 at Nyquist
    edge = f >= EDGE_BAND
    band = edge[:, None] | edge[None, :]
    return float(spec[band].sum() / spec.sum())


def _check_aliasing(values, t):
    frac = nyquist_fraction(values)
    limit = tolerances()["nyquist_energy_fraction"]
    if frac > limit:
        raise ResolutionError(
            f"spectral weight {frac:.2e} at the Nyquist edge (t = {t:.3e} s) exceeds {limit:.0e}; "
            "refine the grid"
        )


def integrate_master_equation(
    p: ParticleSpec, lam: float, t_final: float, g: Grid2D, dt: float, save_every: int = 0
) -> Trajectory:
    """Evolve the initial state to ``t_final`` with steps of about ``dt``.

    ``dt`` is shrunk so that a whole number of steps lands on ``t_final``.
    ``save_every = k`` keeps every k-th state; the final state is always kept.
    Trace and purity are recorded at every step.
    """
    if t_final <= 0 or dt <= 0:
        raise DomainError("t_final and dt must be positive")
    if lam < 0:
        raise DomainError("Lambda must be >= 0")
    steps = max(1, int(np.ceil(t_final / dt - 1e-9)))
    dt = t_final / steps

    x, dx = g.x, g.dx
    rho = initial_state(x[:, None], x[None, :], p)
    _check_aliasing(rho, 0.0)

    k = 2 * np.pi * np.fft.fftfreq(g.n, dx)
    kinetic = np.exp(-1j * p.hbar * (k[:, None] ** 2 - k[None, :] ** 2) * dt / (2 * p.m))
    half_decay = np.exp(-lam * (x[:, None] - x[None, :]) ** 2 * dt / 2)

    times = np.linspace(0.0, t_final, steps + 1)
    trace = np.empty(steps + 1)
    pur = np.empty(steps + 1)
    trace[0] = np.real(np.trace(rho)) * dx
    pur[0] = np.sum(np.abs(rho) ** 2) * dx**2
    snaps = [GridDensityMatrix(g, rho.copy(), 0.0)] if save_every else []

    for s in range(1, steps + 1):
        rho = np.fft.ifft2(kinetic * np.fft.fft2(rho * half_decay)) * half_decay
        trace[s] = np.real(np.trace(rho)) * dx
        pur[s] = np.sum(np.abs(rho) ** 2) * dx**2
        if save_every and s % save_every == 0 and s != steps:
            snaps.append(GridDensityMatrix(g, rho.copy(), times[s]))

    _check_aliasing(rho, t_final)
    snaps.append(GridDensityMatrix(g, rho, t_final))
    return Trajectory(times=times, trace=trace, purity=pur, snapshots=snaps)
