"""Exact position-space evolution of the walk.

The state at time ``t`` is a dense window of 2-component amplitudes over
positions ``-t..t``.  One step maps

    psi_{t+1}(x) = P psi_t(x+1) + Q psi_t(x-1)

(with ``P1, Q1`` instead on swap steps), which in the dense window is a
pair of shifted axpy operations.  Everything is deterministic: the
probabilities are squared amplitude norms, never sampled.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .coin import Schedule, WalkParams

__all__ = [
    "StateVector",
    "Distribution",
    "initial_state",
    "step",
    "evolve",
    "distribution",
    "DEFAULT_MAX_T",
    "max_time_cap",
]

#: Hard cap on requested evolution times; override with the QWALK_MAX_T
#: environment variable.
DEFAULT_MAX_T = 10**6

#: Probabilities more negative than this indicate a real bug rather than
#: harmless rounding, and are not clamped.
NEGATIVE_PROB_FLOOR = -1e-15


def max_time_cap() -> int:
    """Active evolution-time cap: ``QWALK_MAX_T`` if set, else the default."""
    raw = os.environ.get("QWALK_MAX_T")
    return int(raw) if raw else DEFAULT_MAX_T


@dataclass(frozen=True)
class StateVector:
    """Walker amplitudes at a fixed time.

    ``amps[i]`` is the 2-component amplitude at position ``offset + i``;
    the window always spans ``-time .. time``.  Positions ``x`` with
    ``x + time`` odd hold exact zeros (the walker moves one site per
    step).  Instances are read-only.
    """

    time: int
    offset: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.time < 0:
            raise ValueError("time must be non-negative")
        if self.offset != -self.time:
            raise ValueError("window must start at -time")
        if self.amps.shape != (2 * self.time + 1, 2):
            raise ValueError(
                f"amps shape {self.amps.shape} does not match window "
                f"[-{self.time}, {self.time}]"
            )
        self.amps.flags.writeable = False

    @property
    def positions(self) -> np.ndarray:
        """Positions covered by the window, ``-t..t``."""
        return np.arange(self.offset, self.offset + self.amps.shape[0])

    def amplitude(self, x: int) -> np.ndarray:
        """Amplitude at position ``x`` (zero outside the window)."""
        i = x - self.offset
        if 0 <= i < self.amps.shape[0]:
            return self.amps[i]
        return np.zeros(2, dtype=np.complex128)

    def norm_sq(self) -> float:
        """Total probability; 1 up to roundoff for any valid state."""
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class Distribution:
    """Exact position distribution at a fixed time."""

    time: int
    probs: dict[int, float]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Positions (sorted) and probabilities as parallel arrays."""
        xs = np.array(sorted(self.probs), dtype=np.int64)
        ps = np.array([self.probs[int(x)] for x in xs])
        return xs, ps

    def total(self) -> float:
        return float(sum(self.probs.values()))


def initial_state(params: WalkParams) -> StateVector:
    """State at ``t = 0``: the spinor ``(alpha, beta)`` at the origin."""
    amps = np.zeros((1, 2), dtype=np.complex128)
    amps[0] = params.spinor
    return StateVector(time=0, offset=0, amps=amps)


def _coin_rows(params: WalkParams, swap: bool) -> tuple[float, float, float, float]:
    # Rows of the active coin: top row feeds the left-moving component,
    # bottom row the right-moving one.
    if swap:
        return params.c1, params.s1, params.s1, -params.c1
    return params.c, params.s, params.s, -params.c


def _advance(amps: np.ndarray, rows: tuple[float, float, float, float]) -> np.ndarray:
    a, b, c, d = rows
    new = np.zeros((amps.shape[0] + 2, 2), dtype=np.complex128)
    new[:-2, 0] = a * amps[:, 0] + b * amps[:, 1]
    new[2:, 1] = c * amps[:, 0] + d * amps[:, 1]
    return new


def step(state: StateVector, params: WalkParams, schedule: Schedule) -> StateVector:
    """Advance one time step; the window grows by one site on each side."""
    swap = schedule.swaps_at(state.time, params.tau)
    new = _advance(state.amps, _coin_rows(params, swap))
    return StateVector(time=state.time + 1, offset=state.offset - 1, amps=new)


def evolve(
    params: WalkParams,
    schedule: Schedule,
    t_final: int,
    max_t: int | None = None,
) -> StateVector:
    """Evolve from the initial state to time ``t_final``.

    Raises
    ------
    ValueError
        If ``t_final`` is negative or exceeds the resource cap
        (``max_t`` argument, else ``QWALK_MAX_T``, else 10**6).
    """
    if t_final < 0:
        raise ValueError(f"t_final must be non-negative, got {t_final}")
    cap = max_time_cap() if max_t is None else max_t
    if t_final > cap:
        raise ValueError(f"t_final={t_final} exceeds the configured cap {cap}")
    amps = initial_state(params).amps
    for t in range(t_final):
        amps = _advance(amps, _coin_rows(params, schedule.swaps_at(t, params.tau)))
    return StateVector(time=t_final, offset=-t_final, amps=amps)


def _clamp_probability(p: float) -> float:
    if p < 0.0:
        if p < NEGATIVE_PROB_FLOOR:
            raise ArithmeticError(f"probability {p} below the rounding floor")
        return 0.0
    return p


def distribution(state: StateVector) -> Distribution:
    """Squared amplitude norms over the whole window."""
    ps = np.sum(np.abs(state.amps) ** 2, axis=1)
    xs = state.positions
    probs = {int(x): _clamp_probability(float(p)) for x, p in zip(xs, ps)}
    return Distribution(time=state.time, probs=probs)
