"""Closed-form dark-state-polariton analytics.

These are the adiabatic, relaxationless companion formulas of the full
simulation: the shape-preserving field/coherence mixture of a single
Lambda channel, the rotation of a stored coherence by a rectangular
control-4 pulse, the two-channel release coupling matrix, and the
polariton group velocity.  They serve both as a standalone calculator
and as oracles for the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import C_LIGHT, EPSILON_0, HBAR, CouplingVariant, LevelScheme

__all__ = [
    "RotatedCoherences",
    "MixingMatrix",
    "dark_polariton_3",
    "rotate_pair",
    "rotate_coherences",
    "mixing_matrix",
    "polariton_velocity",
    "dark_polariton_4",
]


@dataclass(frozen=True)
class RotatedCoherences:
    """Ground-state block after a control-4 pulse of area theta.

    Populations and the b-d coherence assume the pre-pulse population
    sits in |b>; the stored coherence sigma_bc(t1) is carried along.
    For vanishing population outside b the closure
    sigma_bb + sigma_dd = 1 holds exactly.
    """

    sigma_bb: float
    sigma_dd: float
    sigma_bd: complex
    sigma_bc: complex
    sigma_dc: complex
    theta: float


@dataclass(frozen=True)
class MixingMatrix:
    """Release-stage coupling matrix of the two signal channels."""

    M11: float
    M13: float
    M31: float
    M33: float


def dark_polariton_3(
    eps1: complex,
    sigma_bc: complex,
    Omega2: float,
    scheme: LevelScheme,
    N: float,
) -> complex:
    """Single-Lambda dark-state polariton of channel 1.

    Psi = [Omega2 eps1 + (2 w1 N d1/eps0) sigma_bc]
          / sqrt(Omega2^2 + 2 w1 N d1^2/(hbar eps0)) * (-d2/|d2|);
    the sign factor makes Psi -> eps1 for a strong control field
    (positive control amplitude convention, any sign of d2).
    """
    w1, d1, d2 = scheme.omega1, scheme.d1, scheme.d2
    denom_sq = Omega2**2 + 2.0 * w1 * N * d1**2 / (HBAR * EPSILON_0)
    if denom_sq <= 0.0:
        raise ValueError("polariton normalization vanishes")
    if d2 == 0.0:
        raise ValueError("control transition needs a nonzero dipole d2")
    numer = Omega2 * eps1 + (2.0 * w1 * N * d1 / EPSILON_0) * sigma_bc
    return numer / math.sqrt(denom_sq) * (-d2 / abs(d2))


def rotate_pair(
    sigma_bc: complex, sigma_dc: complex, theta: float
) -> tuple[complex, complex]:
    """Rotation of the (sigma_bc, sigma_dc) coherence pair by angle theta."""
    c, s = math.cos(theta), math.sin(theta)
    return c * sigma_bc + s * sigma_dc, -s * sigma_bc + c * sigma_dc


def rotate_coherences(sigma_bc_t1: complex, theta: float) -> RotatedCoherences:
    """Ground-block state after a control-4 pulse of area theta.

    Starting from population in |b> and a stored coherence
    sigma_bc(t1): sigma_bb = cos^2(theta), sigma_dd = sin^2(theta),
    sigma_bd = -sin(theta)cos(theta), sigma_bc = sigma_bc(t1) cos(theta),
    sigma_dc = -sigma_bc(t1) sin(theta).
    """
    c, s = math.cos(theta), math.sin(theta)
    bc, dc = rotate_pair(sigma_bc_t1, 0.0, theta)
    return RotatedCoherences(
        sigma_bb=c * c,
        sigma_dd=s * s,
        sigma_bd=-s * c,
        sigma_bc=bc,
        sigma_dc=dc,
        theta=theta,
    )


def mixing_matrix(theta: float, scheme: LevelScheme, N: float) -> MixingMatrix:
    """Channel-coupling matrix of the release stage (CASE_B only).

    M = -(2N/(eps0 hbar)) * outer([d1 sqrt(w1) cos, d3 sqrt(w3) sin]-type
    weights): rank one by construction, diagonal entries non-positive.
    """
    if scheme.variant is not CouplingVariant.CASE_B:
        raise ValueError("the two-channel mixing matrix exists in CASE_B only")
    c, s = math.cos(theta), math.sin(theta)
    pref = 2.0 * N / (EPSILON_0 * HBAR)
    w1, w3, d1, d3 = scheme.omega1, scheme.omega3, scheme.d1, scheme.d3
    return MixingMatrix(
        M11=-pref * w1 * d1 * d1 * c * c,
        M13=pref * w1 * d1 * d3 * s * c,
        M31=pref * w3 * d3 * d1 * s * c,
        M33=-pref * w3 * d3 * d3 * s * s,
    )


def polariton_velocity(
    theta: float, Omega2: float, scheme: LevelScheme, N: float
) -> float:
    """Group velocity of the shape-preserving release solution.

    v = c / (1 + 2N (d1^2 w1 cos^2 + d3^2 w3 sin^2) / (hbar eps0 Omega2^2)).
    Omega2 = 0 returns 0 (stopped light).
    """
    if Omega2 == 0.0:
        return 0.0
    c, s = math.cos(theta), math.sin(theta)
    weight = scheme.d1**2 * scheme.omega1 * c * c + scheme.d3**2 * scheme.omega3 * s * s
    drag = 2.0 * N * weight / (HBAR * EPSILON_0 * Omega2**2)
    return C_LIGHT / (1.0 + drag)


def dark_polariton_4(
    eps1: complex,
    eps3: complex,
    sigma_bc: complex,
    sigma_dc: complex,
    theta: float,
    Omega2: float,
    scheme: LevelScheme,
    N: float,
) -> complex:
    """Two-channel dark-state polariton of the release stage.

    Combination of both signal fields and both stored coherences.  The
    overall sqrt(omega1) factor is the normalization under which the
    theta = 0 strong-control limit returns eps1 (the single-channel
    polariton) and theta = -pi/2 returns sqrt(w1/w3) eps3 d1 d3/|d1 d3|;
    at switch-on it equals
    sqrt(2 N hbar w1 / eps0) [sigma_bc cos(theta) - sigma_dc sin(theta)].
    """
    c, s = math.cos(theta), math.sin(theta)
    w1, w3, d1, d3 = scheme.omega1, scheme.omega3, scheme.d1, scheme.d3
    if d1 == 0.0:
        raise ValueError("channel 1 needs a nonzero dipole d1")
    weight = d1 * d1 * w1 * c * c + d3 * d3 * w3 * s * s
    if weight == 0.0:
        raise ValueError("polariton weight vanishes at this angle")
    if Omega2 == 0.0:
        raise ValueError("the release-stage polariton needs Omega2 != 0")
    drag = 1.0 + 2.0 * N * weight / (EPSILON_0 * HBAR * Omega2**2)
    prefactor = math.sqrt(weight) * math.sqrt(w1) / math.sqrt(drag) * (d1 / abs(d1))
    bracket = (d1 * eps1 * c - d3 * eps3 * s) / weight + (
        2.0 * N / (EPSILON_0 * Omega2)
    ) * (sigma_bc * c - sigma_dc * s)
    return prefactor * bracket
