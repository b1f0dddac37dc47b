"""Quantum walk on the integer line with a single coin swap.

A 2-state coined walk evolves with coin ``U(theta)``; at one chosen
step tau the coin is replaced by ``H(theta1)`` and then reverts.  This
single defect localizes the walker: measurement probabilities at fixed
positions converge to strictly positive point masses, and the rescaled
position ``X_t/t`` converges weakly to an atom at 0 plus an absolutely
continuous density.  The package simulates the walk exactly, evaluates
the limit laws in closed form, and cross-checks both against an
independent Fourier-space evolution.
"""

from .analysis import (
    ConvergenceTrace,
    limit_moment,
    localized_mass,
    mass_trace,
    moment,
    rescaled_cdf_distance,
)
from .coin import (
    CoinSet,
    ExcludedAngleError,
    NormalizationError,
    Schedule,
    ScheduleKind,
    WalkParams,
    build_coins,
    fourier_coin,
    shift_matrix,
)
from .dynamics import (
    Distribution,
    StateVector,
    distribution,
    evolve,
    initial_state,
    step,
)
from .limits import (
    LimitDensity,
    LimitMass,
    delta_mass,
    limit_cdf,
    limit_mass_total,
    limit_masses,
    theorem1_limit,
    theorem2_density,
)
from .spectral import (
    FourierState,
    SpectralPair,
    asymptotic_amplitude,
    eigensystem,
    fourier_transform,
    spectral_evolve,
)

__all__ = [
    "ConvergenceTrace",
    "CoinSet",
    "Distribution",
    "ExcludedAngleError",
    "FourierState",
    "LimitDensity",
    "LimitMass",
    "NormalizationError",
    "Schedule",
    "ScheduleKind",
    "SpectralPair",
    "StateVector",
    "WalkParams",
    "asymptotic_amplitude",
    "build_coins",
    "delta_mass",
    "distribution",
    "eigensystem",
    "evolve",
    "fourier_coin",
    "fourier_transform",
    "initial_state",
    "limit_cdf",
    "limit_mass_total",
    "limit_masses",
    "limit_moment",
    "localized_mass",
    "mass_trace",
    "moment",
    "rescaled_cdf_distance",
    "shift_matrix",
    "spectral_evolve",
    "step",
    "theorem1_limit",
    "theorem2_density",
]

__version__ = "0.1.0"
