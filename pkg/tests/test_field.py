from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lightstore.core import (
    C_LIGHT,
    IA,
    IB,
    ground_state,
)
from lightstore.field import (
    MediumState,
    advance,
    coupling_constant,
    initial_state,
    propagate_window,
)
from lightstore.pulses import signal_envelope
from lightstore.scenarios import measure_group_delay, run_slow_light
from lightstore.polariton import polariton_velocity


def make_state(nz, L, sigma=None):
    z = np.linspace(0.0, L, nz)
    if sigma is None:
        sigma = ground_state("b", nz=nz)
    return MediumState(
        t_prime=0.0,
        z=z,
        sigma=sigma,
        eps1=np.zeros(nz, dtype=complex),
        eps3=np.zeros(nz, dtype=complex),
    )


class TestCouplingConstant:
    def test_vacuum(self, scheme_b):
        assert coupling_constant(scheme_b, 0.0, 1) == 0.0

    def test_linear_in_density(self, scheme_b):
        k1 = coupling_constant(scheme_b, 3e-13, 1)
        assert_allclose(coupling_constant(scheme_b, 6e-13, 1), 2.0 * k1, rtol=1e-15)

    def test_pinned_value_channel_1(self, scheme_b):
        # N d1 w1 * 4pi / c with d1 = 2.152228: 5.9208e-15
        assert_allclose(coupling_constant(scheme_b, 3e-13, 1), 5.9208e-15, rtol=1e-4)

    def test_channel_3_case_a_rejected(self, scheme_a):
        with pytest.raises(ValueError):
            coupling_constant(scheme_a, 3e-13, 3)

    def test_unknown_channel_rejected(self, scheme_b):
        with pytest.raises(ValueError):
            coupling_constant(scheme_b, 3e-13, 2)


class TestPropagateWindow:
    def test_transparent_medium(self, scheme_b):
        state = make_state(97, 3e6)
        out = propagate_window(state, 1e-10 + 2e-11j, 3e-11j, scheme_b, 3e-13)
        assert np.all(out.eps1 == 1e-10 + 2e-11j)
        assert np.all(out.eps3 == 3e-11j)

    def test_constant_source_grows_linearly(self, scheme_b):
        nz, L = 128, 3e6
        s = 0.01 - 0.02j
        sigma = ground_state("b", nz=nz)
        sigma[:, IB, IA] = s
        sigma[:, IA, IB] = np.conj(s)
        state = make_state(nz, L, sigma)
        out = propagate_window(state, 0.0, 0.0, scheme_b, 3e-13)
        kappa = coupling_constant(scheme_b, 3e-13, 1)
        # exact for a constant integrand
        assert_allclose(out.eps1[-1], -1j * kappa * s * L, rtol=1e-12)

    def test_second_order_in_dz(self, scheme_b):
        # curved source profile: halving the cell size cuts the error 4x
        L = 3e6
        kappa = coupling_constant(scheme_b, 3e-13, 1)

        def endpoint(nz):
            z = np.linspace(0.0, L, nz)
            sigma = ground_state("b", nz=nz)
            profile = 0.02 * (z / L) ** 2
            sigma[:, IB, IA] = profile
            sigma[:, IA, IB] = profile
            state = make_state(nz, L, sigma)
            return propagate_window(state, 0.0, 0.0, scheme_b, 3e-13).eps1[-1]

        exact = -1j * kappa * 0.02 * (L / 3.0)
        e_coarse = abs(endpoint(51) - exact)
        e_fine = abs(endpoint(101) - exact)
        assert 3.8 < e_coarse / e_fine < 4.2

    def test_case_a_channel_3_stays_zero(self, scheme_a):
        state = make_state(33, 2.5e6)
        out = propagate_window(state, 1e-10, 0.0, scheme_a, 3e-13)
        assert np.all(out.eps3 == 0.0)


class TestAdvance:
    def test_dark_medium_stays_dark(self, config_a):
        # control on, no signal: the ground state is never excited
        cfg = replace(config_a, nz=40, t_end=1e9)
        sched = replace(cfg.schedule, eps10=0.0)
        cfg = replace(cfg, schedule=sched)
        state = initial_state(cfg)
        for _ in range(50):
            state = advance(state, cfg)
        assert np.max(np.abs(state.eps1)) == 0.0
        assert np.max(np.abs(state.sigma[:, IA, IA])) == 0.0
        assert_allclose(state.sigma[:, IB, IB].real, 1.0, atol=1e-14)

    def test_vacuum_pulse_is_stationary_in_window_time(self, config_b):
        # N = 0: the recorded shape at z = L reproduces the boundary input
        cfg = replace(config_b, N=0.0, nz=24, t_end=1.2e10)
        state = initial_state(cfg)
        n = int(round(cfg.t_end / cfg.dt))
        ts, outs = [], []
        for _ in range(n):
            state = advance(state, cfg)
            ts.append(state.t_prime)
            outs.append(state.eps1[-1])
        expected = signal_envelope(np.asarray(ts), cfg.schedule)
        assert np.max(np.abs(np.asarray(outs) - expected)) < 1e-12 * cfg.schedule.eps10


class TestGroupDelay:
    def test_vacuum_velocity_is_c(self, config_b):
        cfg = replace(config_b, N=0.0, nz=24)
        result = run_slow_light(cfg, probe_length=1e10)
        v = measure_group_delay(result, result.config)
        assert abs(v - C_LIGHT) / C_LIGHT < 1e-3

    def test_three_level_delay_matches_velocity_formula(self, config_a):
        # constant control, no storage: centroid delay against the
        # closed-form group velocity at theta = 0
        result = run_slow_light(config_a, probe_length=2.5e10)
        v = measure_group_delay(result, result.config)
        omega2 = -config_a.schedule.eps2_max * config_a.scheme.d2
        v_theory = polariton_velocity(0.0, omega2, config_a.scheme, config_a.N)
        assert abs(v - v_theory) / v_theory < 0.10
