"""Momentum-space machinery: eigen-decomposition, DFT evolution, limits.

This module is the independent oracle for :mod:`qwalk.dynamics`: the
walk has bounded support ``|x| <= t``, so on a wavenumber grid of at
least ``2*t + 2`` points the inverse transform is an *exact* finite DFT
rather than an approximate quadrature.  Evolving pointwise in ``k`` and
transforming back must reproduce the position-space evolution to
roundoff; any disagreement is a bug in one of the two routes.

It also evaluates the large-time amplitude limits at fixed positions,
whose squared norms are a second, independent route to the stationary
point masses of :func:`qwalk.limits.theorem1_limit`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coin import Schedule, WalkParams
from .dynamics import StateVector

__all__ = [
    "SpectralPair",
    "FourierState",
    "eigensystem",
    "fourier_transform",
    "spectral_evolve",
    "asymptotic_amplitude",
]

#: Below this, the distinguished real factor of an eigenvector form is
#: considered ill-conditioned and the co-factor form is used instead.
BRANCH_RADICAND_TOL = 1e-8


@dataclass(frozen=True)
class SpectralPair:
    """Eigenvalues and eigenvectors of the momentum-space coin at one k.

    The eigenvalues lie on the unit circle and satisfy
    ``lambda1 * lambda2 == -1``; the eigenvectors are orthonormal.
    """

    k: float
    lambda1: complex
    lambda2: complex
    v1: np.ndarray
    v2: np.ndarray

    def __post_init__(self) -> None:
        self.v1.flags.writeable = False
        self.v2.flags.writeable = False


def _eigenvector(c: float, s: float, k: float, sign: float) -> np.ndarray:
    """Unit eigenvector for the branch with eigenvalue ``sign*sqrt(A)+ic sin k``.

    Two algebraically equivalent co-factor forms exist,

        (s e^{ik},  sign*rA - c cos k)   and   ((sign*rA + c cos k) e^{ik},  s),

    and each has one real factor that can suffer catastrophic
    cancellation when ``|c cos k|`` approaches ``rA``.  The small member
    of the pair is recovered stably from the product identity
    ``(rA - c cos k)(rA + c cos k) = s**2`` and the better-conditioned
    form is selected per ``k``.
    """
    rA = math.sqrt(1.0 - (c * math.sin(k)) ** 2)
    proj = sign * c * math.cos(k)
    if proj > 0:
        big = rA + proj  # = W: radicand of this branch's normalizer
        small = s * s / big
        w, W = small, big
    else:
        big = rA - proj
        small = s * s / big
        w, W = big, small
    phase = complex(math.cos(k), math.sin(k))
    if W >= BRANCH_RADICAND_TOL:
        v = np.array([s * phase, sign * w], dtype=np.complex128)
    else:
        v = np.array([sign * W * phase, s], dtype=np.complex128)
    return v / np.linalg.norm(v)


def eigensystem(params: WalkParams, k: float) -> SpectralPair:
    """Closed-form eigen-decomposition of the momentum-space coin.

    The eigenvalues are ``+-sqrt(1 - c^2 sin^2 k) + i c sin k``; their
    product is exactly -1.
    """
    c, s = params.c, params.s
    rA = math.sqrt(1.0 - (c * math.sin(k)) ** 2)
    imag = 1j * c * math.sin(k)
    return SpectralPair(
        k=float(k),
        lambda1=rA + imag,
        lambda2=-rA + imag,
        v1=_eigenvector(c, s, k, +1.0),
        v2=_eigenvector(c, s, k, -1.0),
    )


@dataclass(frozen=True)
class FourierState:
    """Transformed amplitudes on an equispaced wavenumber grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (self.grid.shape[0], 2):
            raise ValueError("values must be one 2-spinor per grid point")
        self.grid.flags.writeable = False
        self.values.flags.writeable = False

    def norm_sq(self) -> float:
        """Grid average of the squared spinor norm (Plancherel mass)."""
        return float(np.mean(np.sum(np.abs(self.values) ** 2, axis=1)))


def _wavenumber_grid(n: int) -> np.ndarray:
    return -np.pi + 2.0 * np.pi * np.arange(n) / n


def fourier_transform(state: StateVector, n_grid: int) -> FourierState:
    """Forward transform ``sum_x e^{-ikx} psi(x)`` sampled on ``n_grid`` points."""
    ks = _wavenumber_grid(n_grid)
    phases = np.exp(-1j * np.outer(ks, state.positions))
    return FourierState(grid=ks, values=phases @ state.amps)


def spectral_evolve(
    params: WalkParams,
    schedule: Schedule,
    t_final: int,
    n_grid: int | None = None,
) -> StateVector:
    """Evolve in momentum space and inverse-DFT back to positions.

    The transformed state advances by a pointwise 2x2 multiplication per
    step; on a grid of ``n_grid >= 2*t_final + 2`` points the inverse
    DFT recovers the position amplitudes exactly (to roundoff), making
    this an independent check of the position-space stepping.
    """
    if t_final < 0:
        raise ValueError(f"t_final must be non-negative, got {t_final}")
    n = 2 * t_final + 2 if n_grid is None else n_grid
    if n < 2 * t_final + 2:
        raise ValueError(
            f"grid too small: n_grid={n} < 2*t_final+2 = {2 * t_final + 2}"
        )
    ks = _wavenumber_grid(n)
    eik = np.exp(1j * ks)
    emk = np.conj(eik)
    g0 = np.full(n, params.alpha, dtype=np.complex128)
    g1 = np.full(n, params.beta, dtype=np.complex128)
    for t in range(t_final):
        if schedule.swaps_at(t, params.tau):
            a, b = params.c1, params.s1
        else:
            a, b = params.c, params.s
        g0, g1 = eik * (a * g0 + b * g1), emk * (b * g0 - a * g1)
    pos0 = np.fft.ifft(g0)
    pos1 = np.fft.ifft(g1)
    xs = np.arange(-t_final, t_final + 1)
    signs = np.where(xs % 2 == 0, 1.0, -1.0)  # e^{-i pi x} for the grid offset
    amps = np.empty((2 * t_final + 1, 2), dtype=np.complex128)
    amps[:, 0] = signs * pos0[xs % n]
    amps[:, 1] = signs * pos1[xs % n]
    return StateVector(time=t_final, offset=-t_final, amps=amps)


def _parity_index(parity: str) -> int:
    if parity == "odd":
        return 1
    if parity == "even":
        return 0
    raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


def asymptotic_amplitude(params: WalkParams, x: int, parity: str) -> np.ndarray:
    """Large-time amplitude limit at position ``x``, up to a global phase.

    ``parity`` selects the measurement subsequence: ``"odd"`` for times
    ``2*tau + 1`` and ``"even"`` for ``2*tau + 2``.  The returned spinor
    is the tau-independent representative (an alternating global sign is
    dropped), so only its squared norm is meaningful; that squared norm
    equals the stationary point mass at ``x``.
    """
    want_odd = _parity_index(parity)
    c, s = params.c, params.s
    c1, s1 = params.c1, params.s1
    alpha, beta = params.alpha, params.beta
    g = c1 * s - s1 * c
    sa = abs(s)
    m = 1.0 - sa
    if x % 2 != want_odd:
        return np.zeros(2, dtype=np.complex128)
    ix = (1j * m / abs(c)) ** abs(x)
    if parity == "even":
        if x == 0:
            return g * sa * m / c**2 * np.array([-beta, alpha])
        i2 = (1j * m / abs(c)) ** 2
        if x == 2:
            return g / c**2 * np.array(
                [i2 * (c * s * alpha - sa * m * beta), m * alpha - c * s * i2 * beta]
            )
        if x == -2:
            return g / c**2 * np.array(
                [-c * s * i2 * alpha - m * beta, i2 * (sa * m * alpha + c * s * beta)]
            )
        if x >= 4:
            spinor = [c * s * alpha - sa * (1 - sa) * beta,
                      sa * (1 + sa) * alpha - c * s * beta]
        else:
            spinor = [-c * s * alpha - sa * (1 + sa) * beta,
                      sa * (1 - sa) * alpha + c * s * beta]
        return g * ix / c**2 * np.array(spinor)
    if x == 1:
        return g * m / c**3 * np.array(
            [c * s * alpha - sa * m * beta, -c * (c * alpha + s * beta)]
        )
    if x == -1:
        return g * m / c**3 * np.array(
            [c * (s * alpha - c * beta), -sa * m * alpha - c * s * beta]
        )
    jx = 1j * g * ix / (c**2 * abs(c) * m)
    if x >= 3:
        spinor = [m * (-(c**2) * s * alpha + c * sa * m * beta),
                  -(c**2) * (c * sa * alpha - s * m * beta)]
    else:
        spinor = [-(c**2) * (s * m * alpha + c * sa * beta),
                  m * (c * sa * m * alpha + c**2 * s * beta)]
    return jx * np.array(spinor)
