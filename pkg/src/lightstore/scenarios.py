"""End-to-end storage/release experiment drivers and their diagnostics.

A storage cycle injects the sine-squared signal at z = 0 under the
control field 2, switches the control off to store the pulse as a
ground-state coherence, applies the rectangular control 4 for a chosen
pulse area during the storage plateau, and switches the control back on
to release the light, recording the boundary output at z = L.

Results are written as CSV (full double precision) plus a plain-text
echo of the resolved configuration, so runs are reproducible bit for
bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .core import (
    C_LIGHT,
    IB,
    IC,
    ID,
    ConfigError,
    CouplingVariant,
    SimulationConfig,
    default_config,
    dump_config,
    suggested_dt,
    trace_deviation,
)
from .bloch import StepStats
from .field import MediumState, advance, initial_state
from .polariton import polariton_velocity
from .pulses import duration_for_area, pulse_area, signal_envelope

__all__ = [
    "ScenarioResult",
    "MeasurementError",
    "desk_config",
    "with_area_window",
    "shift_window",
    "run_storage_cycle",
    "sweep_pulse_area",
    "run_overlap_scenario",
    "run_slow_light",
    "measure_group_delay",
    "release_mask",
    "released_waveform",
    "waveform_correlation",
    "waveform_l2_change",
    "modulation_period",
    "band_power_fraction",
    "write_run_csv",
    "write_summary_csv",
    "save_runs",
]

RELEASE_MARGIN_RISES = 5.0  # release window starts this many rise times after t_on

CSV_HEADER = "t_prime,re_eps1,im_eps1,re_eps3,im_eps3"
SUMMARY_HEADER = (
    "file,theta,peak_amp_1,peak_amp_3,"
    "released_energy_1,released_energy_3,residual_coherence_norm"
)


class MeasurementError(RuntimeError):
    """A diagnostic could not be extracted from a run."""


@dataclass
class ScenarioResult:
    """Boundary time series and release diagnostics of one run."""

    times: np.ndarray          # recorded window times (a.u.)
    out1: np.ndarray           # complex envelope at z = L, channel 1
    out3: np.ndarray           # complex envelope at z = L, channel 3
    theta: float               # control-4 pulse area of the run
    release_start: float       # beginning of the release window
    released_energy_1: float
    released_energy_3: float
    peak_amp_1: float          # signed real peak in the release window
    peak_amp_3: float
    residual_coherence_norm: float
    input_fluence: float
    output_fluence: float
    max_trace_dev: float
    max_herm_defect: float
    config: SimulationConfig
    final_state: MediumState
    snapshots: dict[float, MediumState] = field(default_factory=dict)


def desk_config(variant: CouplingVariant) -> SimulationConfig:
    """Desk-scale profile: length and signal timing 10x below full scale.

    Keeps every rate, amplitude and density of ``default_config`` so the
    physics (group velocity, pulse areas, Rabi periods) is unchanged,
    while a full area sweep stays in the minutes range.  CASE_B uses
    U = 6e-10 a.u. so a pi-area window fits the shortened plateau.
    """
    config = default_config(variant)
    scheme = config.scheme
    if variant is CouplingVariant.CASE_B:
        scheme = replace(scheme, U=6e-10)
    plateau_centre = 1.5e10
    schedule = replace(
        config.schedule,
        tau1=0.0,
        tau2=1e10,
        t_off=8e9,
        t_on=2.2e10,
        rise=1e8,
        ctrl4_amp=scheme.U if variant is CouplingVariant.CASE_B else 2.0e-9,
        ctrl4_t1=plateau_centre,
        ctrl4_t2=plateau_centre,
    )
    config = replace(
        config,
        scheme=scheme,
        schedule=schedule,
        L=config.L / 10.0,
        nz=200,
        dt=suggested_dt(scheme, schedule),
        t_end=3.2e10,
        record_stride=4,
    )
    config.validate()
    return config


def with_area_window(
    config: SimulationConfig,
    theta: float,
    amp: float | None = None,
    center: float | None = None,
) -> SimulationConfig:
    """Place a control-4 window of exact area theta inside the plateau.

    The window is centred in the storage plateau (or at `center`), its
    edges snapped to the integration grid, and the amplitude rescaled by
    the snapping ratio so the area stays exactly theta: an RK4 stage
    straddling a rectangle edge would otherwise bias the area by O(dt).
    """
    schedule, scheme, dt = config.schedule, config.scheme, config.dt
    if amp is None:
        amp = schedule.ctrl4_amp
    if center is None:
        center = 0.5 * (schedule.t_off + schedule.t_on)
    if theta == 0.0:
        t1 = round(center / dt) * dt
        new = replace(schedule, ctrl4_t1=t1, ctrl4_t2=t1)
        return replace(config, schedule=new)
    if amp == 0.0:
        raise ConfigError("nonzero area requires a nonzero control-4 amplitude")

    duration = duration_for_area(theta, amp, scheme)
    t1 = round((center - 0.5 * duration) / dt) * dt
    n_steps = max(1, round(duration / dt))
    t2 = t1 + n_steps * dt
    amp_snapped = amp * duration / (n_steps * dt)
    guard = RELEASE_MARGIN_RISES * schedule.rise
    if t1 < schedule.t_off + guard or t2 > schedule.t_on - guard:
        raise ConfigError(
            f"control-4 window [{t1:.3e}, {t2:.3e}] does not fit the storage plateau"
        )
    new = replace(schedule, ctrl4_amp=amp_snapped, ctrl4_t1=t1, ctrl4_t2=t2)
    return replace(config, schedule=new)


def shift_window(config: SimulationConfig, shift: float) -> SimulationConfig:
    """Translate the control-4 window by `shift`, snapped to the grid."""
    dt = config.dt
    delta = round(shift / dt) * dt
    schedule = config.schedule
    new = replace(
        schedule,
        ctrl4_t1=schedule.ctrl4_t1 + delta,
        ctrl4_t2=schedule.ctrl4_t2 + delta,
    )
    return replace(config, schedule=new)


def run_storage_cycle(
    config: SimulationConfig,
    capture_times: tuple[float, ...] = (),
    initial_level: str = "b",
) -> ScenarioResult:
    """Run one full storage/manipulation/release cycle.

    `capture_times` requests medium snapshots at the first step crossing
    each value (used to inspect the stored coherences before and after
    the control-4 window).
    """
    config.validate()
    schedule = config.schedule
    state = initial_state(config, level=initial_level)
    stats = StepStats()

    n_steps = int(round(config.t_end / config.dt))
    stride = config.record_stride
    times = [0.0]
    out1 = [complex(state.eps1[-1])]
    out3 = [complex(state.eps3[-1])]
    pending = sorted(capture_times)
    snapshots: dict[float, MediumState] = {}
    max_trace_dev = 0.0

    for k in range(1, n_steps + 1):
        state = advance(state, config, stats)
        max_trace_dev = max(max_trace_dev, trace_deviation(state.sigma))
        while pending and state.t_prime >= pending[0]:
            snapshots[pending.pop(0)] = state
        if k % stride == 0:
            times.append(state.t_prime)
            out1.append(complex(state.eps1[-1]))
            out3.append(complex(state.eps3[-1]))

    times_arr = np.asarray(times)
    out1_arr = np.asarray(out1)
    out3_arr = np.asarray(out3)

    release_start = schedule.t_on + RELEASE_MARGIN_RISES * schedule.rise
    mask = times_arr >= release_start
    energy1 = float(np.trapezoid(np.abs(out1_arr[mask]) ** 2, times_arr[mask]))
    energy3 = float(np.trapezoid(np.abs(out3_arr[mask]) ** 2, times_arr[mask]))
    peak1 = _signed_peak(out1_arr[mask])
    peak3 = _signed_peak(out3_arr[mask])

    boundary = np.abs(signal_envelope(times_arr, schedule)) ** 2
    input_fluence = float(np.trapezoid(boundary, times_arr))
    output_fluence = float(
        np.trapezoid(np.abs(out1_arr) ** 2 + np.abs(out3_arr) ** 2, times_arr)
    )

    sigma = state.sigma
    residual = float(
        np.sum(
            np.abs(sigma[:, IB, IC]) ** 2
            + np.abs(sigma[:, ID, IC]) ** 2
            + np.abs(sigma[:, IB, ID]) ** 2
        )
    )

    return ScenarioResult(
        times=times_arr,
        out1=out1_arr,
        out3=out3_arr,
        theta=pulse_area(
            schedule.ctrl4_amp, schedule.ctrl4_t1, schedule.ctrl4_t2, config.scheme
        ),
        release_start=release_start,
        released_energy_1=energy1,
        released_energy_3=energy3,
        peak_amp_1=peak1,
        peak_amp_3=peak3,
        residual_coherence_norm=residual,
        input_fluence=input_fluence,
        output_fluence=output_fluence,
        max_trace_dev=max_trace_dev,
        max_herm_defect=stats.max_herm_defect,
        config=config,
        final_state=state,
        snapshots=snapshots,
    )


def _signed_peak(envelope: np.ndarray) -> float:
    if envelope.size == 0:
        return 0.0
    real = envelope.real
    return float(real[np.argmax(np.abs(real))])


def sweep_pulse_area(
    config: SimulationConfig, thetas: list[float]
) -> list[ScenarioResult]:
    """One storage cycle per pulse area, identical timing otherwise."""
    results = []
    for theta in thetas:
        run_config = with_area_window(config, theta)
        results.append(run_storage_cycle(run_config))
    return results


def run_overlap_scenario(
    config: SimulationConfig,
    amp_factor: float = 10.0,
    t1: float | None = None,
    t2: float | None = None,
) -> ScenarioResult:
    """Storage cycle with control 4 overlapping the release switch-on.

    The coupling is `amp_factor` stronger than the sweep default and the
    window runs from the middle of the storage plateau into the release
    stage, imprinting the c-d (or b-d) Rabi oscillation on the leaving
    pulse.
    """
    schedule = config.schedule
    if t1 is None:
        t1 = 0.5 * (schedule.t_off + schedule.t_on)
    if t2 is None:
        t2 = schedule.t_on + 0.6 * (config.t_end - schedule.t_on)
    dt = config.dt
    new = replace(
        schedule,
        ctrl4_amp=schedule.ctrl4_amp * amp_factor,
        ctrl4_t1=round(t1 / dt) * dt,
        ctrl4_t2=round(t2 / dt) * dt,
    )
    run_config = replace(config, schedule=new)
    run_config = replace(
        run_config, dt=min(dt, suggested_dt(run_config.scheme, new))
    )
    return run_storage_cycle(run_config)


def run_slow_light(
    config: SimulationConfig,
    omega2_scale: float = 1.0,
    channel: int = 1,
    initial_level: str = "b",
    probe_length: float = 4e10,
) -> ScenarioResult:
    """Constant-control propagation run for group-velocity measurements.

    No storage happens: the control-2 switch times are pushed beyond the
    end of the run and control 4 stays off.  `channel`/`initial_level`
    select which Lambda system is probed (channel 3 from level d probes
    the rotated configuration in CASE_B).
    """
    scheme = config.scheme
    omega2 = -config.schedule.eps2_max * omega2_scale * scheme.d2
    prep_theta = 0.0 if initial_level == "b" else 0.5 * math.pi
    v = polariton_velocity(prep_theta, omega2, scheme, config.N)
    delay = config.L / v - config.L / C_LIGHT
    t_end = probe_length + 1.6 * delay + 2e9

    schedule = replace(
        config.schedule,
        eps2_max=config.schedule.eps2_max * omega2_scale,
        tau1=0.0,
        tau2=probe_length,
        t_off=10.0 * t_end,
        t_on=20.0 * t_end,
        ctrl4_t1=0.0,
        ctrl4_t2=0.0,
        signal_channel=channel,
    )
    run_config = replace(config, schedule=schedule, t_end=t_end)
    return run_storage_cycle(run_config, initial_level=initial_level)


def measure_group_delay(result: ScenarioResult, config: SimulationConfig) -> float:
    """Group velocity from the energy-centroid delay of a no-storage run.

    The window frame already removes the vacuum flight time, so
    v = L / (dt' + L/c) with dt' the centroid shift between the boundary
    input and the z = L output.
    """
    if result.output_fluence < 1e-6 * result.input_fluence:
        raise MeasurementError("output energy too small to locate the pulse")
    weight = np.abs(result.out1) ** 2 + np.abs(result.out3) ** 2
    centroid_out = float(np.sum(result.times * weight) / np.sum(weight))
    schedule = config.schedule
    centroid_in = 0.5 * (schedule.tau1 + schedule.tau2)
    delay = centroid_out - centroid_in
    return config.L / (delay + config.L / C_LIGHT)


# ---------------------------------------------------------------------------
# Waveform diagnostics
# ---------------------------------------------------------------------------

def release_mask(result: ScenarioResult) -> np.ndarray:
    return result.times >= result.release_start


def released_waveform(result: ScenarioResult, channel: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """(times, real envelope) of the requested channel in the release window."""
    mask = release_mask(result)
    out = result.out1 if channel == 1 else result.out3
    return result.times[mask], out[mask].real


def waveform_correlation(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of two equally sampled waveforms."""
    if a.shape != b.shape:
        raise ValueError("waveforms must share the sampling grid")
    da, db = a - a.mean(), b - b.mean()
    norm = math.sqrt(float(np.sum(da * da) * np.sum(db * db)))
    if norm == 0.0:
        raise MeasurementError("degenerate waveform in correlation")
    return float(np.sum(da * db) / norm)


def waveform_l2_change(reference: np.ndarray, other: np.ndarray) -> float:
    """Relative L2 difference ||other - reference|| / ||reference||."""
    if reference.shape != other.shape:
        raise ValueError("waveforms must share the sampling grid")
    denom = math.sqrt(float(np.sum(np.abs(reference) ** 2)))
    if denom == 0.0:
        raise MeasurementError("reference waveform vanishes")
    return math.sqrt(float(np.sum(np.abs(other - reference) ** 2))) / denom


def _poly_detrend(times: np.ndarray, x: np.ndarray, deg: int = 3) -> np.ndarray:
    """Remove the slow pulse shape with a low-order polynomial fit.

    A polynomial cannot follow oscillations with several cycles in the
    window, so the fast modulation survives intact; a moving average
    would itself inject structure at its own width.
    """
    t = (times - times[0]) / (times[-1] - times[0])
    coef = np.polynomial.polynomial.polyfit(t, x, deg)
    return x - np.polynomial.polynomial.polyval(t, coef)


def _periodogram(times: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(x)
    dt = float(times[1] - times[0])
    spectrum = np.abs(np.fft.rfft(x * np.hanning(n), 8 * n)) ** 2
    freqs = np.fft.rfftfreq(8 * n, dt)
    return freqs, spectrum


def modulation_period(times: np.ndarray, envelope: np.ndarray) -> float:
    """Dominant oscillation period of |envelope| over the given samples.

    Detrends the magnitude, then locates the main periodogram peak on an
    8x zero-padded grid with parabolic refinement.
    """
    n = len(times)
    if n < 16:
        raise MeasurementError("window too short for a period estimate")
    freqs, spectrum = _periodogram(times, _poly_detrend(times, np.abs(envelope)))
    # require at least two full cycles inside the window
    valid = freqs >= 2.0 / (times[-1] - times[0])
    if not np.any(valid):
        raise MeasurementError("no resolvable modulation band")
    idx = int(np.argmax(np.where(valid, spectrum, 0.0)))
    if 0 < idx < len(spectrum) - 1:
        y0, y1, y2 = spectrum[idx - 1 : idx + 2]
        denom = y0 - 2.0 * y1 + y2
        shift = 0.5 * (y0 - y2) / denom if denom != 0.0 else 0.0
    else:
        shift = 0.0
    f_peak = freqs[idx] + shift * (freqs[1] - freqs[0])
    if f_peak <= 0.0:
        raise MeasurementError("modulation peak at zero frequency")
    return 1.0 / f_peak


def band_power_fraction(
    times: np.ndarray, envelope: np.ndarray, period: float, rel_bw: float = 0.25
) -> float:
    """Detrended |envelope| power around 1/period, relative to total power.

    The reference is the raw (mean-removed) signal power, so a smooth
    unmodulated release scores near zero instead of being inflated by
    its own detrending residue.
    """
    x = np.abs(envelope)
    freqs, band_spec = _periodogram(times, _poly_detrend(times, x))
    _, raw_spec = _periodogram(times, x - x.mean())
    f0 = 1.0 / period
    band = (freqs >= f0 * (1.0 - rel_bw)) & (freqs <= f0 * (1.0 + rel_bw))
    total = float(np.sum(raw_spec[1:]))
    if total == 0.0:
        return 0.0
    return float(np.sum(band_spec[band]) / total)


# ---------------------------------------------------------------------------
# Output files
# ---------------------------------------------------------------------------

def _g17(x: float) -> str:
    return format(x, ".17g")


def write_run_csv(path: str | Path, result: ScenarioResult) -> None:
    """Boundary time series as CSV, full double precision."""
    lines = [CSV_HEADER]
    for t, e1, e3 in zip(result.times, result.out1, result.out3):
        lines.append(
            ",".join(
                (_g17(t), _g17(e1.real), _g17(e1.imag), _g17(e3.real), _g17(e3.imag))
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_summary_csv(path: str | Path, entries: list[tuple[str, ScenarioResult]]) -> None:
    """Per-run summary table (file name, area, peaks, energies, residual)."""
    lines = [SUMMARY_HEADER]
    for name, res in entries:
        lines.append(
            ",".join(
                (
                    name,
                    _g17(res.theta),
                    _g17(res.peak_amp_1),
                    _g17(res.peak_amp_3),
                    _g17(res.released_energy_1),
                    _g17(res.released_energy_3),
                    _g17(res.residual_coherence_norm),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def save_runs(
    out_dir: str | Path,
    entries: list[tuple[str, ScenarioResult]],
    config: SimulationConfig,
) -> None:
    """Write one CSV per run plus summary.csv and a run.meta config echo."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, res in entries:
        write_run_csv(out / name, res)
    write_summary_csv(out / "summary.csv", entries)
    dump_config(config, out / "run.meta", header="resolved configuration (atomic units)")
