"""Batch comparison of the closed forms against the numerical oracles."""

from __future__ import annotations

import itertools
import math
from typing import List, Optional

import numpy as np

from .bath import FULLERENE, ParticleSpec
from .errors import DecoGaussError
from .evolution import EvolutionPoint
from .observables import coherence_length_p, coherence_length_x, covariance, purity
from .oracle import (
    OracleReport,
    Grid2D,
    compare,
    default_grid,
    evolve_by_convolution,
    failure,
    integrate_master_equation,
    moments_from_grid,
    sample_density,
    tolerances,
)

STANDARD_GAMMAS = (-3.0, 0.0, 3.0)
STANDARD_LAMBDAS = (0.0, 1e21, 1e22)
STANDARD_TIMES = (0.25e-6, 0.5e-6, 1e-6)
PDE_LAMBDA = 1e21
PDE_TIME = 0.5e-6
PDE_STEPS = 16
POINTWISE_MASK = 1e-6


def standard_grid():
    return list(itertools.product(STANDARD_GAMMAS, STANDARD_LAMBDAS, STANDARD_TIMES))


def _absolute(quantity, value, tol, gamma, lam, t):
    """Report for a quantity whose exact value is zero."""
    value = float(value)
    err = abs(value) if math.isfinite(value) else math.inf
    return OracleReport(quantity, 0.0, value, err, tol, err <= tol, gamma, lam, t)


def _moment_reports(prefix, gm, p, e, tol_mom, tol_pur, tol_len=None):
    c = covariance(p, e)
    where = dict(gamma=p.gamma, lam=e.lam, t=e.t)
    out = [
        compare(c.s11, gm.cov.s11, tol_mom, f"{prefix}s11", **where),
        compare(c.s22, gm.cov.s22, tol_mom, f"{prefix}s22", **where),
        compare(c.s12, gm.cov.s12, tol_mom, f"{prefix}s12", **where),
        compare(purity(p, e), gm.mu, tol_pur, f"{prefix}mu", **where),
    ]
    if tol_len is not None:
        out += [
            compare(coherence_length_x(p, e), gm.lx2, tol_len, f"{prefix}lx2", **where),
            compare(coherence_length_p(p, e), gm.lp2, tol_len, f"{prefix}lp2", **where),
        ]
    return out


def quadrature_reports(p: ParticleSpec, e: EvolutionPoint, n: int = 1024) -> List[OracleReport]:
    tol = tolerances()
    where = dict(gamma=p.gamma, lam=e.lam, t=e.t)
    try:
        gm = moments_from_grid(sample_density(p, e, default_grid(p, e, n)), p)
    except DecoGaussError:
        return [failure("quad", tol=tol["quadrature_moments"], **where)]
    out = _moment_reports("quad_", gm, p, e, tol["quadrature_moments"], tol["quadrature_purity"], tol["quadrature_lengths"])
    out += [
        _absolute("quad_excess_kurtosis_x", gm.kurtosis_x, tol["slice_excess_kurtosis"], **where),
        _absolute("quad_excess_kurtosis_p", gm.kurtosis_p, tol["slice_excess_kurtosis"], **where),
    ]
    return out


def convolution_reports(p: ParticleSpec, e: EvolutionPoint, n: int = 1024) -> List[OracleReport]:
    tol = tolerances()
    where = dict(gamma=p.gamma, lam=e.lam, t=e.t)
    try:
        g = default_grid(p, e, n)
        exact = sample_density(p, e, g).values
        dm = evolve_by_convolution(p, e, g)
        mask = np.abs(exact) > POINTWISE_MASK * np.abs(exact).max()
        dev = np.max(np.abs(dm.values[mask] / exact[mask] - 1))
        gm = moments_from_grid(dm, p)
    except DecoGaussError:
        return [failure("conv", tol=tol["convolution_moments"], **where)]
    out = [_absolute("conv_rho_rel_dev", dev, tol["convolution_pointwise"], **where)]
    out += _moment_reports("conv_", gm, p, e, tol["convolution_moments"], tol["convolution_moments"])
    return out


def pde_reports(p: ParticleSpec, lam: float = PDE_LAMBDA, t: float = PDE_TIME, n: int = 512) -> List[OracleReport]:
    """Covariance, O(dt^2) convergence, trace and purity checks for one gamma."""
    tol = tolerances()
    e = EvolutionPoint(t, lam)
    where = dict(gamma=p.gamma, lam=lam, t=t)
    c = covariance(p, e)
    try:
        g = default_grid(p, e, n)
        coarse = integrate_master_equation(p, lam, t, g, t / (PDE_STEPS // 2))
        fine = integrate_master_equation(p, lam, t, g, t / PDE_STEPS)
        gm_c = moments_from_grid(coarse.final, p)
        gm_f = moments_from_grid(fine.final, p)
    except DecoGaussError:
        return [failure("pde", tol=tol["pde_covariance"], **where)]
    out = _moment_reports("pde_", gm_f, p, e, tol["pde_covariance"], tol["pde_covariance"])
    err_c = abs(gm_c.cov.s11 / c.s11 - 1)
    err_f = abs(gm_f.cov.s11 / c.s11 - 1)
    ratio = err_c / err_f if err_f > 0 else math.inf
    lo, hi = tol["pde_order_ratio_min"], tol["pde_order_ratio_max"]
    out.append(OracleReport("pde_order_ratio", 4.0, ratio, abs(ratio - 4.0) / 4.0, (hi - lo) / 8, lo <= ratio <= hi, **where))
    out.append(_absolute("pde_trace_drift", np.max(np.abs(fine.trace - 1)), tol["pde_trace"], **where))
    rise = np.max(np.diff(fine.purity)) if lam > 0 else 0.0
    out.append(_absolute("pde_purity_increase", max(rise, 0.0), tol["pde_unitary_purity"], **where))
    return out


def pde_unitary_reports(p: ParticleSpec, t: float = PDE_TIME, n: int = 512) -> List[OracleReport]:
    """Without noise the purity must stay at its initial value."""
    tol = tolerances()
    where = dict(gamma=p.gamma, lam=0.0, t=t)
    try:
        traj = integrate_master_equation(p, 0.0, t, default_grid(p, EvolutionPoint(t, 0.0), n), t / PDE_STEPS)
    except DecoGaussError:
        return [failure("pde_unitary", tol=tol["pde_unitary_purity"], **where)]
    drift = np.max(np.abs(traj.purity / traj.purity[0] - 1))
    return [_absolute("pde_unitary_purity_drift", drift, tol["pde_unitary_purity"], **where)]


def run_verify(level: str = "quick", n: Optional[int] = None, particle: ParticleSpec = FULLERENE) -> List[OracleReport]:
    """``quick`` runs the quadrature oracle on the standard grid; ``full``
    adds the convolution and master-equation oracles.

    ``n`` overrides every grid size (use a small value as a negative control).
    """
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    reports: List[OracleReport] = []
    points = standard_grid()
    for gamma, lam, t in points:
        reports += quadrature_reports(particle.with_gamma(gamma), EvolutionPoint(t, lam), n or 1024)
    if level == "full":
        for gamma, lam, t in points:
            if t > 0:
                reports += convolution_reports(particle.with_gamma(gamma), EvolutionPoint(t, lam), n or 1024)
        for gamma in STANDARD_GAMMAS:
            reports += pde_reports(particle.with_gamma(gamma), n=n or 512)
        reports += pde_unitary_reports(particle.with_gamma(3.0), n=n or 512)
    return reports
