"""Analytic field envelopes and pulse-area bookkeeping.

All envelopes are closed forms: sine-squared signal, tanh switching of
the control field 2, rectangular control 4.  Pulse areas use the
half-angle convention theta = coupling * duration / (2 hbar), so a
stored ground-state coherence is multiplied by cos(theta).
"""

from __future__ import annotations

import numpy as np

from .core import HBAR, CouplingVariant, LevelScheme, PulseSchedule

__all__ = [
    "signal_envelope",
    "control2_envelope",
    "control4_envelope",
    "omega2_of_t",
    "ctrl4_of_t",
    "pulse_area",
    "duration_for_area",
]


def signal_envelope(t, schedule: PulseSchedule):
    """Boundary signal envelope eps10 * sin^2(pi (t-tau1)/(tau2-tau1)) on its support."""
    t = np.asarray(t, dtype=float)
    width = schedule.tau2 - schedule.tau1
    phase = np.pi * (t - schedule.tau1) / width
    # the envelope vanishes at both support endpoints, so strict
    # comparisons return the exact zero there instead of sin(pi)^2 noise
    inside = (t > schedule.tau1) & (t < schedule.tau2)
    value = schedule.eps10 * np.sin(phase) ** 2
    return np.where(inside, value, 0.0)[()]


def control2_envelope(t, schedule: PulseSchedule):
    """Control-2 amplitude: on, tanh switch-off at t_off, tanh switch-on at t_on."""
    t = np.asarray(t, dtype=float)
    off = 0.5 * (1.0 - np.tanh((t - schedule.t_off) / schedule.rise))
    on = 0.5 * (1.0 + np.tanh((t - schedule.t_on) / schedule.rise))
    value = schedule.eps2_max * (off + on)
    return np.clip(value, 0.0, schedule.eps2_max)[()]


def control4_envelope(t, schedule: PulseSchedule):
    """Rectangular control-4 amplitude on [ctrl4_t1, ctrl4_t2)."""
    t = np.asarray(t, dtype=float)
    inside = (t >= schedule.ctrl4_t1) & (t < schedule.ctrl4_t2)
    return np.where(inside, schedule.ctrl4_amp, 0.0)[()]


def omega2_of_t(t, schedule: PulseSchedule, scheme: LevelScheme):
    """Signed control Rabi frequency Omega2(t) = -eps2(t) d2 / hbar."""
    return -control2_envelope(t, schedule) * scheme.d2 / HBAR


def ctrl4_of_t(t, schedule: PulseSchedule):
    """Control-4 drive amplitude at time t (U in CASE_B, eps4 in CASE_A)."""
    return control4_envelope(t, schedule)


def _effective_coupling(amp: float, scheme: LevelScheme) -> float:
    if scheme.variant is CouplingVariant.CASE_A:
        return abs(amp * scheme.d4)
    return amp


def pulse_area(amp: float, t1: float, t2: float, scheme: LevelScheme) -> float:
    """Rotation half-angle theta of a rectangular control-4 pulse.

    CASE_B: theta = U (t2-t1) / (2 hbar); CASE_A: theta uses the electric
    c-d coupling |eps4 d4| in place of U.
    """
    if t2 < t1:
        raise ValueError("pulse_area requires t2 >= t1")
    return _effective_coupling(amp, scheme) * (t2 - t1) / (2.0 * HBAR)


def duration_for_area(theta: float, amp: float, scheme: LevelScheme) -> float:
    """Rectangular-pulse duration giving area theta at fixed amplitude."""
    coupling = _effective_coupling(amp, scheme)
    if coupling == 0.0:
        raise ValueError("cannot reach a nonzero area with zero amplitude")
    return 2.0 * HBAR * theta / coupling
