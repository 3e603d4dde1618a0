"""Data behind the coherence figures and the purity/coherence table.

Every function returns plain column dictionaries; the ``write_*`` helpers
turn them into CSV files with the sweep formatting.
"""

from __future__ import annotations

import os
from typing import Dict, List

import numpy as np

from .asymptotics import fit_epsilon, gamma_infinity_lengths, theta
from .bath import FULLERENE, ParticleSpec
from .errors import ConfigError
from .evolution import EvolutionPoint
from .observables import coherence_from_purity
from .sweep import evaluate, validate_rows, write_csv

FIGURE_IDS = ("2a", "2b", "2c", "2d", "3", "4a", "4b", "5")

T_REF = 1e-6
LAMBDA_REF = 1e22
FIG2_GAMMAS = (-3.0, 0.0, 3.0)
FIG4_LAMBDAS = (1e21, 1e22, 1e23)

TABLE1_GAMMAS = (50.0, 105.6, 147.2, 202.8, 258.3, 300.0)
TABLE1_MU = (15.1e-3, 7.2e-3, 5.2e-3, 3.8e-3, 3.0e-3, 2.6e-3)
TABLE1_C = (4.1, 4.8, 5.2, 5.5, 5.7, 5.9)


def _grid(particle, gammas, lambdas, times):
    G, L, T = np.meshgrid(gammas, lambdas, times, indexing="ij")
    cols = evaluate(particle, G.ravel(), L.ravel(), T.ravel())
    validate_rows(cols)
    return cols


def fig2(particle: ParticleSpec = FULLERENE, count: int = 60) -> Dict[str, np.ndarray]:
    """gamma in {-3, 0, 3}, Lambda log-spaced over 1e19..1e24, t = 1 us.

    ``dC_dLambda_abs`` is ``|dC/dLambda|`` from second-order differences on
    the (non-uniform) Lambda grid, one-sided at both ends.
    """
    lams = np.geomspace(1e19, 1e24, count)
    cols = _grid(particle, FIG2_GAMMAS, lams, [T_REF])
    cols["lx"] = np.sqrt(cols["lx2"])
    cols["lp"] = np.sqrt(cols["lp2"])
    C = cols["C"].reshape(len(FIG2_GAMMAS), count)
    cols["dC_dLambda_abs"] = np.abs(np.gradient(C, lams, axis=1)).ravel()
    return cols


def fig3(particle: ParticleSpec = FULLERENE, n_gamma: int = 49, n_lambda: int = 61):
    """Surface over gamma in [-6, 6] and Lambda in [1e20, 1e23] at t = 1 us."""
    return _grid(particle, np.linspace(-6, 6, n_gamma), np.geomspace(1e20, 1e23, n_lambda), [T_REF])


def fig4a(particle: ParticleSpec = FULLERENE, count: int = 150):
    """Exact (mu, C) along gamma in [2, 300] for three values of Lambda."""
    return _grid(particle, np.linspace(2, 300, count), FIG4_LAMBDAS, [T_REF])


def fig4b(particle: ParticleSpec = FULLERENE, count: int = 150):
    """Coherence from purity with the coherence lengths frozen at their gamma -> inf values.

    The purity values are the exact ones of :func:`fig4a`, so both panels
    share the same abscissae.
    """
    exact = fig4a(particle, count)
    lam, mu = exact["lambda"], exact["mu"]
    lx2, lp2 = gamma_infinity_lengths(particle, EvolutionPoint(T_REF, lam))
    return {
        "gamma": exact["gamma"],
        "lambda": lam,
        "mu": mu,
        "lx2_inf": lx2,
        "lp2_inf": lp2,
        "C": coherence_from_purity(mu, lx2, lp2),
        "C_exact": exact["C"],
    }


def fig5(particle: ParticleSpec = FULLERENE, count: int = 51):
    """Exact (mu, C) for gamma in [50, 300] and the fitted ``(1 + eps) ln(theta/mu)``."""
    cols = _grid(particle, np.linspace(50, 300, count), [LAMBDA_REF], [T_REF])
    th = float(theta(particle, EvolutionPoint(T_REF, LAMBDA_REF)))
    fit = fit_epsilon(np.column_stack([cols["mu"], cols["C"]]), th)
    cols["C_fit"] = (1 + fit.epsilon) * np.log(th / cols["mu"])
    cols["epsilon"] = np.full(count, fit.epsilon)
    cols["theta"] = np.full(count, th)
    return cols


_FIGURES = {
    "2a": (fig2, ["gamma", "lambda", "t", "lx", "lx2"]),
    "2b": (fig2, ["gamma", "lambda", "t", "lp", "lp2"]),
    "2c": (fig2, ["gamma", "lambda", "t", "mu"]),
    "2d": (fig2, ["gamma", "lambda", "t", "C", "dC_dLambda_abs"]),
    "3": (fig3, ["gamma", "lambda", "t", "mu", "C"]),
    "4a": (fig4a, ["gamma", "lambda", "t", "mu", "C", "lx2", "lp2"]),
    "4b": (fig4b, ["gamma", "lambda", "mu", "C", "lx2_inf", "lp2_inf", "C_exact"]),
    "5": (fig5, ["gamma", "lambda", "t", "mu", "C", "C_fit", "epsilon", "theta"]),
}


def figure_data(fig_id: str, particle: ParticleSpec = FULLERENE):
    """Columns and data for one figure panel."""
    try:
        fn, columns = _FIGURES[str(fig_id)]
    except KeyError:
        raise ConfigError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}") from None
    return columns, fn(particle)


def write_figure(fig_id: str, out_dir, particle: ParticleSpec = FULLERENE) -> str:
    columns, data = figure_data(fig_id, particle)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"fig{fig_id}.csv")
    write_csv(path, columns, data)
    return path


def table1(particle: ParticleSpec = FULLERENE, lam: float = LAMBDA_REF, t: float = T_REF) -> Dict[str, List]:
    """Reference vs computed purity and coherence at the tabulated gamma values.

    ``monotone`` is ``true`` when the row continues the expected ordering
    (mu falling, C rising) relative to the previous row, for both the
    reference and the computed values.
    """
    cols = evaluate(particle, np.array(TABLE1_GAMMAS), np.full(6, lam), np.full(6, t))
    mu, C = cols["mu"], cols["C"]
    mono = ["true"]
    for i in range(1, len(mu)):
        ok = mu[i] < mu[i - 1] and C[i] > C[i - 1] and TABLE1_MU[i] < TABLE1_MU[i - 1] and TABLE1_C[i] > TABLE1_C[i - 1]
        mono.append("true" if ok else "false")
    return {
        "gamma": list(TABLE1_GAMMAS),
        "lambda": [lam] * 6,
        "t": [t] * 6,
        "mu_ref": list(TABLE1_MU),
        "mu": list(mu),
        "mu_rel_dev": list((mu - np.array(TABLE1_MU)) / np.array(TABLE1_MU)),
        "C_ref": list(TABLE1_C),
        "C": list(C),
        "C_abs_dev": list(C - np.array(TABLE1_C)),
        "monotone": mono,
    }


TABLE1_COLUMNS = ["gamma", "lambda", "t", "mu_ref", "mu", "mu_rel_dev", "C_ref", "C", "C_abs_dev", "monotone"]


def write_table1(path, particle: ParticleSpec = FULLERENE) -> str:
    write_csv(path, TABLE1_COLUMNS, table1(particle))
    return path
