"""Propagate the initial state with the decoherence kernel by quadrature.

In centre/relative coordinates ``R = (x + x')/2``, ``r = x - x'`` (and the
same for the initial points) the free part of the kernel is
``exp(i m (R - R0)(r - r0) / hbar t)``. The initial state is Gaussian in
``R0`` with no other ``R0`` dependence, so that integral is done in closed
form. What remains is, for each ``r``, a Fourier integral over ``r0`` of a
real Gaussian; it is evaluated with the trapezoidal rule for all ``R`` at
once as a single matrix product.
"""

from __future__ import annotations

import numpy as np

from ..bath import ParticleSpec
from ..errors import ResolutionError
from ..evolution import EvolutionPoint, _require_positive_time
from .grid import Grid2D, GridDensityMatrix, check_extent

# exp(-TAIL) is the neglected Gaussian tail / aliasing level
TAIL = 36.0


def required_spacing(p: ParticleSpec, e: EvolutionPoint, g: Grid2D):
    """Largest ``r0`` step and the ``r0`` half-range the quadrature needs."""
    m, hb, s0 = p.m, p.hbar, p.sigma0
    kappa = p.gamma / s0**2 + m / (hb * e.t)
    aq = e.Lt / 3 + 1 / (4 * s0**2) + p.inv_ell0_sq / 2 + s0**2 * kappa**2 / 4
    k_max = m * g.L / (hb * e.t)
    step = 2 * np.pi / (k_max + np.sqrt(4 * TAIL * aq))
    # centre of the r0 Gaussian moves linearly with r
    drift = abs(s0**2 * kappa * m / (2 * hb * e.t) - e.Lt / 3) / (2 * aq)
    half_range = drift * 2 * g.L + np.sqrt(TAIL / aq)
    return step, half_range


def evolve_by_convolution(p: ParticleSpec, e: EvolutionPoint, g: Grid2D, samples: int = None) -> GridDensityMatrix:
    """Density matrix at time ``t`` on ``g`` from the initial state and kernel.

    ``samples`` fixes the number of ``r0`` quadrature nodes; by default the
    count is derived from :func:`required_spacing`. Too few nodes raise
    :class:`ResolutionError` carrying the required count.
    """
    _require_positive_time(e)
    check_extent(p, e, g)
    m, hb, s0 = p.m, p.hbar, p.sigma0
    n, dx = g.n, g.dx

    step, half = required_spacing(p, e, g)
    needed = int(np.ceil(2 * half / step)) + 1
    if samples is None:
        samples = needed
    elif samples < needed:
        raise ResolutionError(
            f"{samples} quadrature nodes cannot resolve the kernel oscillation; need {needed}",
            required=needed,
        )
    r0 = np.linspace(-half, half, samples)
    dr0 = r0[1] - r0[0]

    # every (x_i, x_j) pair maps to R = (i + j - n) dx / 2 and r = (i - j) dx
    s_idx = np.arange(2 * n - 1)
    R = (s_idx - n) * dx / 2
    r = (s_idx - (n - 1)) * dx

    w = m / (hb * e.t)
    k = p.gamma * r0[None, :] / s0**2 - w * (r[:, None] - r0[None, :])
    log_h = (
        -e.Lt / 3 * (r0[None, :] ** 2 + r[:, None] * r0[None, :])
        - r0[None, :] ** 2 * (1 / (4 * s0**2) + p.inv_ell0_sq / 2)
        - s0**2 * k**2 / 4
    )
    h = np.exp(log_h) * dr0
    fourier = np.exp(-1j * w * np.outer(r0, R))
    inner = h @ fourier  # rows: r, columns: R

    outer = np.exp(1j * w * np.outer(r, R) - e.Lt / 3 * (r**2)[:, None])
    full = (w / (2 * np.pi)) * outer * inner

    i = np.arange(n)
    ii, jj = np.meshgrid(i, i, indexing="ij")
    vals = full[ii - jj + n - 1, ii + jj]
    return GridDensityMatrix(g, vals, e.t)


def brute_force_point(x, x_prime, p: ParticleSpec, e: EvolutionPoint, half_width=None, n=1201):
    """Direct 2-D trapezoidal integral of kernel times initial state at one point.

    Slow; meant for spot checks of :func:`evolve_by_convolution`.
    """
    from ..evolution import log_initial_state, log_propagator_kernel

    if half_width is None:
        half_width = 9 * p.sigma0 * np.sqrt(1 + p.sigma0**2 * p.inv_ell0_sq)
    u = np.linspace(-half_width, half_width, n)
    du = u[1] - u[0]
    X0, X0p = np.meshgrid(u, u, indexing="ij")
    logs = log_propagator_kernel(x, x_prime, X0, X0p, e, p.m, p.hbar) + log_initial_state(X0, X0p, p)
    vals = np.exp(logs)
    wts = np.ones(n)
    wts[0] = wts[-1] = 0.5
    return complex(wts @ vals @ wts * du * du)
