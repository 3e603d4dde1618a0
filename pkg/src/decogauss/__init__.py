"""Decoherence of position-momentum correlated Gaussian states."""

from .asymptotics import (
    AsymptoticReport,
    FitResult,
    asymptotic_limits,
    coherence_approx,
    estimate_lambda,
    fit_epsilon,
    frozen_coherence,
    gamma_infinity_lengths,
    qubit_demo,
    theta,
)
from .bath import (
    FULLERENE,
    HBAR,
    KB,
    BathSpec,
    OhmicBath,
    ParticleSpec,
    ScatteringGas,
    TimeScales,
    lambda_from_scattering,
    ohmic_coefficients,
    tau0,
)
from .errors import ConfigError, DomainError, InvalidStateError, ResolutionError
from .evolution import (
    DensityCoeffs,
    EvolutionPoint,
    density_coeffs,
    initial_state,
    momentum_coeffs,
    position_coeffs,
    propagator_kernel,
    rho_momentum,
    rho_position,
)
from .observables import (
    CoherenceReport,
    CovarianceState,
    coherence_from_purity,
    coherence_length_p,
    coherence_length_x,
    coherence_report,
    covariance,
    dbar,
    purity,
    relative_entropy_coherence,
    symplectic_nu,
    von_neumann_entropy,
)

__version__ = "0.1.0"
