"""Signal propagation through the medium in the moving window frame.

In window coordinates t' = t - z/c, z' = z the slowly-varying-envelope
equation loses its time derivative and each signal channel obeys the
plain z' ODE

    d(eps_j)/dz' = -i kappa_j sigma_(j)a ,   kappa_j = N d_j omega_j / (eps0 c),

sourced by the optical coherence sigma_ba (channel 1) or sigma_da
(channel 3).  One window step is a Lie-Trotter split: advance every
cell's density matrix at frozen local fields, then rebuild the envelopes
by integrating the ODE from the z' = 0 boundary value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .core import (
    C_LIGHT,
    EPSILON_0,
    IA,
    IB,
    ID,
    CouplingVariant,
    LevelScheme,
    NumericalFailure,
    SimulationConfig,
    ground_state,
)
from .bloch import LocalFields, StepStats, step_cell
from .pulses import ctrl4_of_t, omega2_of_t, signal_envelope

__all__ = [
    "MediumState",
    "coupling_constant",
    "propagate_window",
    "advance",
    "initial_state",
    "boundary_values",
]


@dataclass(frozen=True)
class MediumState:
    """Medium snapshot at one window time: z grid, per-cell sigma, envelopes."""

    t_prime: float
    z: np.ndarray        # (nz,) grid points spanning [0, L]
    sigma: np.ndarray    # (nz, 4, 4) complex
    eps1: np.ndarray     # (nz,) complex
    eps3: np.ndarray     # (nz,) complex

    def validate(self) -> None:
        nz = self.z.shape[0]
        if self.sigma.shape != (nz, 4, 4) or self.eps1.shape != (nz,) or self.eps3.shape != (nz,):
            raise ValueError("inconsistent array lengths in MediumState")
        for arr in (self.z, self.sigma, self.eps1, self.eps3):
            if not np.all(np.isfinite(arr.view(float))):
                raise NumericalFailure("non-finite entries in MediumState")


def initial_state(config: SimulationConfig, level: str = "b") -> MediumState:
    """Fresh medium at t' = 0: all population in `level`, no signal fields."""
    nz = config.nz
    return MediumState(
        t_prime=0.0,
        z=np.linspace(0.0, config.L, nz),
        sigma=ground_state(level, nz=nz),
        eps1=np.zeros(nz, dtype=complex),
        eps3=np.zeros(nz, dtype=complex),
    )


def coupling_constant(scheme: LevelScheme, N: float, channel: int) -> float:
    """Propagation coupling kappa_j = N d_j omega_j / (eps0 c) for channel j."""
    if channel == 1:
        d, omega = scheme.d1, scheme.omega1
    elif channel == 3:
        if scheme.variant is CouplingVariant.CASE_A:
            raise ValueError("channel 3 does not exist in CASE_A")
        d, omega = scheme.d3, scheme.omega3
    else:
        raise ValueError(f"invalid signal channel {channel}")
    return N * d * omega / (EPSILON_0 * C_LIGHT)


def propagate_window(
    state: MediumState,
    boundary_eps1: complex,
    boundary_eps3: complex,
    scheme: LevelScheme,
    N: float,
) -> MediumState:
    """Rebuild the signal envelopes along z' at the state's window time.

    Trapezoidal cumulative integration of the source coherences from the
    z' = 0 boundary; the sources do not depend on the envelopes at fixed
    window time, so the trapezoidal corrector is exact in one pass.
    """
    if not np.all(np.isfinite(state.sigma.view(float))):
        raise NumericalFailure("non-finite density matrices in propagate_window")
    kappa1 = coupling_constant(scheme, N, 1)
    source1 = state.sigma[:, IB, IA]
    eps1 = boundary_eps1 - 1j * kappa1 * cumulative_trapezoid(
        source1, state.z, initial=0.0
    )
    if scheme.variant is CouplingVariant.CASE_B:
        kappa3 = coupling_constant(scheme, N, 3)
        source3 = state.sigma[:, ID, IA]
        eps3 = boundary_eps3 - 1j * kappa3 * cumulative_trapezoid(
            source3, state.z, initial=0.0
        )
    else:
        eps3 = np.zeros_like(eps1)
    return replace(state, eps1=eps1, eps3=eps3)


def boundary_values(t: float, config: SimulationConfig) -> tuple[complex, complex]:
    """Signal boundary amplitudes (eps1, eps3) at z' = 0 and window time t."""
    env = complex(signal_envelope(t, config.schedule))
    if config.schedule.signal_channel == 1:
        return env, 0.0 + 0.0j
    return 0.0 + 0.0j, env


def advance(
    state: MediumState,
    config: SimulationConfig,
    stats: StepStats | None = None,
) -> MediumState:
    """One Lie-Trotter window step of the coupled atom-field system.

    (i) every cell's density matrix is advanced by dt at its current
    local signal fields, with the analytic control envelopes re-sampled
    at the RK4 substep times; (ii) the envelopes are regenerated along z'
    from the schedule's boundary value at the new window time.
    """
    scheme, schedule, dt = config.scheme, config.schedule, config.dt
    t0 = state.t_prime
    samples = []
    for t in (t0, t0 + 0.5 * dt, t0 + dt):
        samples.append(
            LocalFields(
                eps1=state.eps1,
                eps3=state.eps3,
                Omega2=omega2_of_t(t, schedule, scheme),
                ctrl4=ctrl4_of_t(t, schedule),
            )
        )
    try:
        sigma = step_cell(
            state.sigma, samples[0], scheme, dt,
            f_mid=samples[1], f_end=samples[2], stats=stats,
        )
    except NumericalFailure as exc:
        raise NumericalFailure(f"{exc} at t' = {t0:.6e}") from exc

    stepped = MediumState(
        t_prime=t0 + dt,
        z=state.z,
        sigma=sigma,
        eps1=state.eps1,
        eps3=state.eps3,
    )
    b1, b3 = boundary_values(t0 + dt, config)
    return propagate_window(stepped, b1, b3, scheme, config.N)
