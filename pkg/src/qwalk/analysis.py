"""Convergence diagnostics connecting simulation to the limit laws.

Everything here is exact arithmetic on exact distributions: traces of a
point probability across growing half-times, the Kolmogorov distance
between the rescaled walk and its weak limit, and moments of ``X_t/t``
against the limit moments.  No sampling is involved anywhere.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coin import Schedule, WalkParams
from .dynamics import Distribution, distribution, evolve
from .limits import LimitDensity

__all__ = [
    "ConvergenceTrace",
    "mass_trace",
    "rescaled_cdf_distance",
    "moment",
    "limit_moment",
    "localized_mass",
]

_PARITY_STEP = {"odd": 1, "even": 2}


@dataclass(frozen=True)
class ConvergenceTrace:
    """Observable values along a strictly increasing half-time grid."""

    taus: tuple[int, ...]
    observable: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.taus) != len(self.values):
            raise ValueError("taus and values must have equal length")
        if any(b <= a for a, b in zip(self.taus, self.taus[1:])):
            raise ValueError("taus must be strictly increasing")


def mass_trace(
    params: WalkParams,
    x: int,
    parity: str,
    taus: Iterable[int],
) -> ConvergenceTrace:
    """Simulated ``P(X_t = x)`` at ``t = 2*tau + 1`` or ``2*tau + 2`` per tau.

    ``params.tau`` serves as a template and is replaced by each entry of
    ``taus``; the values approach the stationary point mass as tau grows.
    """
    if parity not in _PARITY_STEP:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    schedule = Schedule.half_time()
    taus = tuple(int(tau) for tau in taus)
    values = []
    for tau in taus:
        p = dataclasses.replace(params, tau=tau)
        state = evolve(p, schedule, 2 * tau + _PARITY_STEP[parity])
        values.append(distribution(state).probs.get(x, 0.0))
    return ConvergenceTrace(
        taus=taus,
        observable=f"mass(x={x}, {parity})",
        values=tuple(values),
    )


def rescaled_cdf_distance(params: WalkParams, t: int) -> float:
    """Kolmogorov distance between the law of ``X_t/t`` and its weak limit.

    The limit law has an atom at 0, and the walk's localized counterpart
    is mass at fixed positions on *both* sides of the origin; at the
    lattice point just left of 0 the raw distribution functions then
    differ by half the atom forever, so the plain supremum distance does
    not vanish.  The walk mass on the sublinear window ``|x| <= sqrt(t)``
    (which captures exactly the localized part in the limit) is therefore
    collapsed to an atom at 0 before comparing.  Both functions are flat
    between the remaining jump points, so evaluating left and right
    limits there gives the exact supremum.
    """
    if t not in (2 * params.tau + 1, 2 * params.tau + 2):
        raise ValueError(
            f"t must be 2*tau+1 or 2*tau+2 for tau={params.tau}, got {t}"
        )
    state = evolve(params, Schedule.half_time(), t)
    xs, ps = distribution(state).as_arrays()
    inside = np.abs(xs) <= t ** 0.5
    points = np.append(xs[~inside] / t, 0.0)
    masses = np.append(ps[~inside], np.sum(ps[inside]))
    order = np.argsort(points)
    points, masses = points[order], masses[order]
    lattice_right = np.cumsum(masses)
    lattice_left = lattice_right - masses
    dens = LimitDensity.from_params(params)
    limit_right = dens.cdf(points)
    limit_left = limit_right - dens.delta * (points == 0.0)
    return max(
        float(np.max(np.abs(limit_right - lattice_right))),
        float(np.max(np.abs(limit_left - lattice_left))),
    )


def moment(dist: Distribution, r: int) -> float:
    """r-th moment of the rescaled position ``X_t/t``."""
    if r < 0:
        raise ValueError(f"moment order must be non-negative, got {r}")
    if dist.time == 0:
        return 1.0 if r == 0 else 0.0
    xs, ps = dist.as_arrays()
    return float(np.sum((xs / dist.time) ** r * ps))


def limit_moment(params: WalkParams, r: int) -> float:
    """r-th moment of the weak limit law of ``X_t/t``."""
    return LimitDensity.from_params(params).moment(r)


def localized_mass(dist: Distribution, exponent: float = 0.5) -> float:
    """Walk mass on the sublinear window ``|x| <= t**exponent``.

    On the rescaled axis the window shrinks to the point 0, so this
    converges to the atom of the weak limit while the spread part
    contributes o(1); it is the simulation-side estimate of delta.
    """
    xs, ps = dist.as_arrays()
    return float(np.sum(ps[np.abs(xs) <= dist.time ** exponent]))
