"""Coin matrices and walk parameters for the 2-state walk on the line.

The walk is driven by a one-parameter family of real reflection coins

    U(theta) = [[cos(theta), sin(theta)], [sin(theta), -cos(theta)]],

split into an upper part ``P`` (moves amplitude left) and a lower part
``Q`` (moves amplitude right).  A second coin ``H = U(theta1)`` of the
same family may replace ``U`` at selected steps; which steps is decided
by a :class:`Schedule`.

Angles where ``cos(theta)`` or ``sin(theta)`` vanish are rejected: the
walk degenerates there and the closed-form limit expressions carry
``1/cos(theta)**6``-type prefactors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = [
    "ExcludedAngleError",
    "NormalizationError",
    "WalkParams",
    "CoinSet",
    "Schedule",
    "ScheduleKind",
    "build_coins",
    "fourier_coin",
    "shift_matrix",
]

#: Default rejection tolerance (radians) around the excluded angles
#: {0, pi/2, pi, 3*pi/2}.
EXCLUDED_ANGLE_TOL = 1e-9

#: Tolerance on | ||(alpha, beta)|| - 1 | below which the initial spinor
#: is renormalized instead of rejected.
SPINOR_NORM_TOL = 1e-9


class ExcludedAngleError(ValueError):
    """Coin angle too close to a multiple of pi/2 (degenerate coin)."""


class NormalizationError(ValueError):
    """Initial spinor is not normalized to within tolerance."""


def _distance_to_quarter_turn(theta: float) -> float:
    """Angular distance from ``theta`` to the nearest multiple of pi/2."""
    r = math.fmod(theta, math.pi / 2)
    if r < 0:
        r += math.pi / 2
    return min(r, math.pi / 2 - r)


@dataclass(frozen=True)
class WalkParams:
    """Complete description of one walk instance.

    Parameters
    ----------
    theta:
        Angle of the main coin ``U`` (radians).  Must stay at least
        ``angle_tol`` away from {0, pi/2, pi, 3*pi/2} (mod 2*pi).
    theta1:
        Angle of the swap coin ``H`` (radians, unrestricted).
    tau:
        Half-time: the step index at which a half-time schedule applies
        ``H`` instead of ``U``.  Non-negative integer.
    alpha, beta:
        Initial spinor at the origin.  ``|alpha|**2 + |beta|**2`` must be
        1 within ``SPINOR_NORM_TOL`` of unit norm; if so the pair is
        renormalized exactly, otherwise :class:`NormalizationError` is
        raised (silent renormalization of grossly wrong input would mask
        caller bugs).
    angle_tol:
        Rejection tolerance around the excluded angles, radians.
    """

    theta: float
    theta1: float
    tau: int
    alpha: complex
    beta: complex
    angle_tol: float = field(default=EXCLUDED_ANGLE_TOL)

    def __post_init__(self) -> None:
        if not isinstance(self.tau, (int, np.integer)) or isinstance(self.tau, bool):
            raise ValueError(f"tau must be an integer, got {self.tau!r}")
        if self.tau < 0:
            raise ValueError(f"tau must be non-negative, got {self.tau}")
        if _distance_to_quarter_turn(float(self.theta)) < self.angle_tol:
            raise ExcludedAngleError(
                f"theta={self.theta!r} is within {self.angle_tol} rad of an "
                "excluded angle (multiple of pi/2)"
            )
        norm = math.hypot(abs(self.alpha), abs(self.beta))
        if abs(norm - 1.0) > SPINOR_NORM_TOL:
            raise NormalizationError(
                f"|alpha|^2 + |beta|^2 = {norm**2!r}; initial spinor must be "
                f"unit norm within {SPINOR_NORM_TOL}"
            )
        object.__setattr__(self, "tau", int(self.tau))
        object.__setattr__(self, "alpha", complex(self.alpha) / norm)
        object.__setattr__(self, "beta", complex(self.beta) / norm)

    # cos/sin shorthands used throughout the closed-form expressions
    @property
    def c(self) -> float:
        return math.cos(self.theta)

    @property
    def s(self) -> float:
        return math.sin(self.theta)

    @property
    def c1(self) -> float:
        return math.cos(self.theta1)

    @property
    def s1(self) -> float:
        return math.sin(self.theta1)

    @property
    def spinor(self) -> np.ndarray:
        """Initial coin state as a length-2 complex array."""
        return np.array([self.alpha, self.beta], dtype=np.complex128)


class CoinSet(NamedTuple):
    """The two coins and their split parts, as 2x2 complex arrays."""

    u: np.ndarray
    h: np.ndarray
    p: np.ndarray
    q: np.ndarray
    p1: np.ndarray
    q1: np.ndarray


def _reflection(c: float, s: float) -> np.ndarray:
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def _split(coin: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    top = np.zeros_like(coin)
    bot = np.zeros_like(coin)
    top[0] = coin[0]
    bot[1] = coin[1]
    return top, bot


def build_coins(params: WalkParams) -> CoinSet:
    """Build ``U``, ``H`` and their split parts ``P, Q, P1, Q1``.

    ``P`` keeps the top row of ``U`` (zero bottom row) and ``Q`` the
    bottom row, so ``P + Q == U`` exactly; likewise ``P1 + Q1 == H``.

    Returns
    -------
    CoinSet
        Named tuple ``(u, h, p, q, p1, q1)`` of read-only 2x2 arrays.
    """
    u = _reflection(params.c, params.s)
    h = _reflection(params.c1, params.s1)
    p, q = _split(u)
    p1, q1 = _split(h)
    mats = CoinSet(u, h, p, q, p1, q1)
    for mat in mats:
        mat.flags.writeable = False
    return mats


def shift_matrix(k: float) -> np.ndarray:
    """Momentum-space shift ``R(k) = diag(e^{ik}, e^{-ik})``."""
    return np.diag([np.exp(1j * k), np.exp(-1j * k)])


def fourier_coin(coin: np.ndarray, k: float) -> np.ndarray:
    """Fourier-space coin at wavenumber ``k``: ``R(k) @ coin``.

    One application advances the transformed state by one time step, so
    the momentum-space evolution is a pointwise 2x2 multiplication.
    Unitary whenever ``coin`` is.
    """
    return shift_matrix(k) @ np.asarray(coin, dtype=np.complex128)


class ScheduleKind(enum.Enum):
    """Which steps use the swap coin ``H``."""

    USUAL = "usual"
    HALF_TIME = "half-time"
    MULTI = "multi"


@dataclass(frozen=True)
class Schedule:
    """Decides, per transition ``t -> t+1``, whether ``H`` replaces ``U``.

    ``HALF_TIME`` is the single-swap model: ``H`` acts exactly on the
    transition from time ``tau`` (so at time ``2*tau + 1`` the walk has
    seen ``U^tau H U^tau``).  ``MULTI`` generalizes to an arbitrary step
    set; no limit law is implemented for it.
    """

    kind: ScheduleKind = ScheduleKind.HALF_TIME
    steps: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind is not ScheduleKind.MULTI and self.steps:
            raise ValueError("explicit step sets are only valid for MULTI schedules")
        if any(t < 0 for t in self.steps):
            raise ValueError("swap steps must be non-negative")
        object.__setattr__(self, "steps", frozenset(int(t) for t in self.steps))

    @classmethod
    def usual(cls) -> "Schedule":
        """Homogeneous walk: ``H`` never applied."""
        return cls(kind=ScheduleKind.USUAL)

    @classmethod
    def half_time(cls) -> "Schedule":
        """Single swap at step ``tau`` (taken from the walk parameters)."""
        return cls(kind=ScheduleKind.HALF_TIME)

    @classmethod
    def multi(cls, steps) -> "Schedule":
        """Swap at every step in ``steps``."""
        return cls(kind=ScheduleKind.MULTI, steps=frozenset(steps))

    def swaps_at(self, t: int, tau: int) -> bool:
        """True if the transition from time ``t`` uses ``(P1, Q1)``."""
        if self.kind is ScheduleKind.USUAL:
            return False
        if self.kind is ScheduleKind.HALF_TIME:
            return t == tau
        return t in self.steps
