"""Domain types, atomic-unit system, configuration and validation.

Everything in this package is expressed in Hartree atomic units
(hbar = 1, c = 137.036, vacuum permittivity 1/(4*pi)).  The types here
are immutable value objects; they can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = [
    "HBAR",
    "C_LIGHT",
    "EPSILON_0",
    "IA",
    "IB",
    "IC",
    "ID",
    "LEVELS",
    "CouplingVariant",
    "LevelScheme",
    "PulseSchedule",
    "SimulationConfig",
    "ConfigError",
    "NumericalFailure",
    "default_config",
    "dipole_from_rate",
    "rate_from_dipole",
    "suggested_dt",
    "ground_state",
    "hermiticity_defect",
    "trace_deviation",
    "check_density_matrix",
    "load_config",
    "dump_config",
]

# Atomic units
HBAR = 1.0
C_LIGHT = 137.036
EPSILON_0 = 1.0 / (4.0 * math.pi)

# Density-matrix basis ordering: upper state first, then the three
# metastable lower states.
LEVELS = ("a", "b", "c", "d")
IA, IB, IC, ID = 0, 1, 2, 3


class ConfigError(ValueError):
    """A configuration value violates an invariant."""


class NumericalFailure(RuntimeError):
    """The integrator produced a non-physical state (NaN, trace drift)."""


class CouplingVariant(Enum):
    """Topology of the fourth-level coupling.

    CASE_A: the lower Lambda state c is coupled to d by a laser (dipole d4);
        only signal channel 1 propagates.
    CASE_B: the upper state a is coupled to d by a second weak signal
        (channel 3) while b and d are linked by an effective coupling of
        magnitude U with an imaginary matrix element iU.
    """

    CASE_A = "case_a"
    CASE_B = "case_b"


@dataclass(frozen=True)
class LevelScheme:
    """Energies, dipole moments and decay rates of the four-level atom.

    Attributes
    ----------
    E_a, E_b, E_c, E_d : float
        State energies (a.u.).  |a> is the excited state, |b>, |c>, |d>
        are metastable.
    d1, d2, d3, d4 : float
        Real signed dipole matrix elements of the transitions a-b, a-c,
        a-d and c-d (a.u.).
    U : float
        Magnitude of the effective b-d coupling (a.u.), CASE_B only.
    Gamma_ab, Gamma_ac, Gamma_ad : float
        Spontaneous decay rates of |a> into each lower state (a.u.).
    variant : CouplingVariant
        Which fourth-level coupling topology is active.
    """

    E_a: float
    E_b: float
    E_c: float
    E_d: float
    d1: float
    d2: float
    d3: float
    d4: float
    U: float
    Gamma_ab: float
    Gamma_ac: float
    Gamma_ad: float
    variant: CouplingVariant

    @property
    def omega1(self) -> float:
        """a-b transition frequency (a.u.)."""
        return self.E_a - self.E_b

    @property
    def omega2(self) -> float:
        """a-c transition frequency (a.u.)."""
        return self.E_a - self.E_c

    @property
    def omega3(self) -> float:
        """a-d transition frequency (a.u.)."""
        return self.E_a - self.E_d

    @property
    def omega4(self) -> float:
        """Frequency of coupling 4: c-d in CASE_A, d-b in CASE_B (a.u.)."""
        if self.variant is CouplingVariant.CASE_A:
            return self.E_c - self.E_d
        return self.E_d - self.E_b

    @property
    def gamma_total(self) -> float:
        """Total population decay rate of |a> (a.u.)."""
        return self.Gamma_ab + self.Gamma_ac + self.Gamma_ad

    def validate(self) -> None:
        for name in ("Gamma_ab", "Gamma_ac", "Gamma_ad"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be >= 0")
        for name in ("omega1", "omega2", "omega3", "omega4"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} is not finite")
        if self.omega1 <= 0.0 or self.omega2 <= 0.0:
            raise ConfigError("omega1 and omega2 must be positive")
        if self.variant is CouplingVariant.CASE_A:
            if self.Gamma_ad != 0.0:
                raise ConfigError("Gamma_ad must vanish in CASE_A")
            if self.d3 != 0.0:
                raise ConfigError("d3 must vanish in CASE_A (no a-d signal)")


@dataclass(frozen=True)
class PulseSchedule:
    """Analytic time envelopes of the four fields.

    Signal (channel 1 or 3): sine-squared pulse of amplitude ``eps10``
    supported on [tau1, tau2].  Control 2: tanh switch-off at ``t_off``
    and switch-on at ``t_on`` with time scale ``rise``.  Control 4:
    rectangular pulse of amplitude ``ctrl4_amp`` on [ctrl4_t1, ctrl4_t2)
    (the effective coupling U in CASE_B, the field amplitude eps4 in
    CASE_A).
    """

    eps10: float
    tau1: float
    tau2: float
    eps2_max: float
    t_off: float
    t_on: float
    rise: float
    ctrl4_amp: float
    ctrl4_t1: float
    ctrl4_t2: float
    signal_channel: int = 1

    def validate(self) -> None:
        if not self.tau1 < self.tau2:
            raise ConfigError("signal support requires tau1 < tau2")
        if not self.t_off < self.t_on:
            raise ConfigError("store-then-release requires t_off < t_on")
        if self.rise <= 0.0:
            raise ConfigError("rise must be positive")
        if self.ctrl4_t2 < self.ctrl4_t1:
            raise ConfigError("control-4 window requires t1 <= t2")
        if self.signal_channel not in (1, 3):
            raise ConfigError("signal_channel must be 1 or 3")


@dataclass(frozen=True)
class SimulationConfig:
    """Complete description of one propagation run."""

    scheme: LevelScheme
    schedule: PulseSchedule
    L: float              # medium length (a.u.)
    N: float              # atom number density (a.u.)
    nz: int               # z-grid point count
    dt: float             # window-time step (a.u.)
    t_end: float          # total window time (a.u.)
    record_stride: int    # output decimation factor

    def validate(self) -> None:
        self.scheme.validate()
        self.schedule.validate()
        if self.L <= 0.0:
            raise ConfigError("L must be positive")
        if self.N < 0.0:
            raise ConfigError("N must be >= 0")
        if self.nz < 2:
            raise ConfigError("nz must be >= 2")
        if self.dt <= 0.0:
            raise ConfigError("dt must be positive")
        if self.t_end <= self.dt:
            raise ConfigError("t_end must exceed dt")
        if self.record_stride < 1:
            raise ConfigError("record_stride must be >= 1")
        if (
            self.schedule.signal_channel == 3
            and self.scheme.variant is CouplingVariant.CASE_A
        ):
            raise ConfigError("channel 3 does not exist in CASE_A")


def dipole_from_rate(gamma: float, omega: float) -> float:
    """Dipole moment from a spontaneous-emission rate, d = sqrt(3 g c^3 / 4 w^3).

    Inverse of the atomic-unit Weisskopf-Wigner relation
    gamma = 4 omega^3 d^2 / (3 c^3).  The positive root is returned.
    """
    if omega <= 0.0:
        raise ValueError("transition frequency must be positive")
    if gamma < 0.0:
        raise ValueError("decay rate must be non-negative")
    return math.sqrt(3.0 * gamma * C_LIGHT**3 / (4.0 * omega**3))


def rate_from_dipole(d: float, omega: float) -> float:
    """Spontaneous-emission rate gamma = 4 omega^3 d^2 / (3 c^3)."""
    return 4.0 * omega**3 * d * d / (3.0 * C_LIGHT**3)


def suggested_dt(
    scheme: LevelScheme, schedule: PulseSchedule, steps_per_period: int = 200
) -> float:
    """Time step resolving the fastest Rabi period by >= steps_per_period.

    The competing rates are |Omega2| at full control amplitude, the
    effective coupling |U| (CASE_B) and |eps4*d4| (CASE_A), all over hbar.
    """
    rates = [schedule.eps2_max * abs(scheme.d2) / HBAR]
    if scheme.variant is CouplingVariant.CASE_A:
        rates.append(abs(schedule.ctrl4_amp * scheme.d4) / HBAR)
    else:
        rates.append(abs(schedule.ctrl4_amp) / HBAR)
    fastest = max(rates)
    if fastest <= 0.0:
        raise ConfigError("no nonzero coupling to set the time step from")
    return 2.0 * math.pi / fastest / steps_per_period


def default_config(variant: CouplingVariant) -> SimulationConfig:
    """Reference parameter set at full experimental scale.

    Energies E_a = -0.10, E_b = -0.20, E_c = -0.18 a.u. with
    E_d = -0.22 (CASE_A) or E_d = E_b + 1e-7 (CASE_B, a magnetic-scale
    splitting).  Decay rates 2.4e-9 a.u. on every radiative branch, from
    which the signal/control dipoles follow; the c-d electric dipole is
    -2.74e-1 a.u.  Sample: length 2.5e7 (CASE_A) / 3e7 (CASE_B) a.u. at
    density 3e-13 a.u.  Signal: 1e11 a.u. long, amplitude 1e-10 a.u.;
    control 2 peaks at 1.2e-9 a.u.; coupling 4 defaults to eps4 = 2e-9
    a.u. (CASE_A) and U = 1e-10 a.u. (CASE_B).

    The control-4 window defaults to zero length (area 0) at the centre
    of the storage plateau; scenario drivers size it for a target area.
    """
    E_a, E_b, E_c = -0.10, -0.20, -0.18
    gamma = 2.4e-9
    if variant is CouplingVariant.CASE_A:
        E_d = -0.22
        scheme = LevelScheme(
            E_a=E_a,
            E_b=E_b,
            E_c=E_c,
            E_d=E_d,
            d1=dipole_from_rate(gamma, E_a - E_b),
            d2=dipole_from_rate(gamma, E_a - E_c),
            d3=0.0,
            d4=-2.74e-1,
            U=0.0,
            Gamma_ab=gamma,
            Gamma_ac=gamma,
            Gamma_ad=0.0,
            variant=variant,
        )
        L = 2.5e7
        ctrl4_amp = 2.0e-9
    else:
        E_d = E_b + 1e-7
        scheme = LevelScheme(
            E_a=E_a,
            E_b=E_b,
            E_c=E_c,
            E_d=E_d,
            d1=dipole_from_rate(gamma, E_a - E_b),
            d2=dipole_from_rate(gamma, E_a - E_c),
            d3=dipole_from_rate(gamma, E_a - E_d),
            d4=-2.74e-1,
            U=1e-10,
            Gamma_ab=gamma,
            Gamma_ac=gamma,
            Gamma_ad=gamma,
            variant=variant,
        )
        L = 3.0e7
        ctrl4_amp = 1e-10

    plateau_centre = 1.5e11
    schedule = PulseSchedule(
        eps10=1e-10,
        tau1=0.0,
        tau2=1e11,
        eps2_max=1.2e-9,
        t_off=8e10,
        t_on=2.2e11,
        rise=1e9,
        ctrl4_amp=ctrl4_amp,
        ctrl4_t1=plateau_centre,
        ctrl4_t2=plateau_centre,
    )
    config = SimulationConfig(
        scheme=scheme,
        schedule=schedule,
        L=L,
        N=3e-13,
        nz=200,
        dt=suggested_dt(scheme, schedule),
        t_end=3.4e11,
        record_stride=40,
    )
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Density-matrix helpers (4x4 complex arrays, basis order a, b, c, d)
# ---------------------------------------------------------------------------

def ground_state(level: str = "b", nz: int | None = None) -> np.ndarray:
    """Density matrix (or a z-stack of them) with all population in `level`."""
    idx = LEVELS.index(level)
    if nz is None:
        sigma = np.zeros((4, 4), dtype=complex)
        sigma[idx, idx] = 1.0
    else:
        sigma = np.zeros((nz, 4, 4), dtype=complex)
        sigma[:, idx, idx] = 1.0
    return sigma


def hermiticity_defect(sigma: np.ndarray) -> float:
    """Largest element of |sigma - sigma^dagger| over all cells."""
    return float(np.max(np.abs(sigma - np.conj(np.swapaxes(sigma, -1, -2)))))


def trace_deviation(sigma: np.ndarray) -> float:
    """Largest |tr(sigma) - 1| over all cells."""
    return float(np.max(np.abs(np.trace(sigma, axis1=-2, axis2=-1) - 1.0)))


def check_density_matrix(
    sigma: np.ndarray,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-10,
    pop_slop: float = 1e-8,
) -> None:
    """Raise if sigma is not Hermitian, trace-one and near-physical."""
    if not np.all(np.isfinite(sigma.view(float))):
        raise NumericalFailure("density matrix contains non-finite entries")
    defect = hermiticity_defect(sigma)
    if defect > herm_tol:
        raise ValueError(f"Hermiticity defect {defect:.3e} exceeds {herm_tol:.1e}")
    drift = trace_deviation(sigma)
    if drift > trace_tol:
        raise ValueError(f"trace deviation {drift:.3e} exceeds {trace_tol:.1e}")
    diag = np.diagonal(sigma, axis1=-2, axis2=-1)
    if np.max(np.abs(diag.imag)) > herm_tol:
        raise ValueError("populations must be real")
    if np.min(diag.real) < -pop_slop or np.max(diag.real) > 1.0 + pop_slop:
        raise ValueError("populations outside [0, 1] beyond integration slop")


# ---------------------------------------------------------------------------
# Plain-text configuration files: `key = value`, '#' comments.
# Keys mirror the dataclass fields, nested ones with a dot
# (e.g. scheme.E_a, schedule.eps10, L, nz).
# ---------------------------------------------------------------------------

_SCHEME_FIELDS = {f.name: f for f in fields(LevelScheme)}
_SCHEDULE_FIELDS = {f.name: f for f in fields(PulseSchedule)}
_TOP_FIELDS = {"L": float, "N": float, "nz": int, "dt": float,
               "t_end": float, "record_stride": int}


def _format_value(value) -> str:
    if isinstance(value, CouplingVariant):
        return value.value
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def dump_config(config: SimulationConfig, path: str | Path, header: str = "") -> None:
    """Write a configuration as a plain-text key-value file."""
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    for name in _SCHEME_FIELDS:
        lines.append(f"scheme.{name} = {_format_value(getattr(config.scheme, name))}")
    for name in _SCHEDULE_FIELDS:
        lines.append(
            f"schedule.{name} = {_format_value(getattr(config.schedule, name))}"
        )
    for name in _TOP_FIELDS:
        lines.append(f"{name} = {_format_value(getattr(config, name))}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_typed(key: str, text: str, kind) -> object:
    try:
        if kind is CouplingVariant or key == "scheme.variant":
            return CouplingVariant(text)
        if kind is int:
            return int(text)
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse value for {key!r}: {text!r}") from exc


def load_config(path: str | Path, base: SimulationConfig | None = None) -> SimulationConfig:
    """Read a key-value configuration file, overriding `base` where given.

    With no base the file must not rely on defaults for the variant; any
    key it omits keeps the value from ``default_config`` of that variant.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, text = (part.strip() for part in stripped.split("=", 1))
        raw[key] = text

    if base is None:
        variant = CouplingVariant(raw.get("scheme.variant", "case_a"))
        base = default_config(variant)

    scheme_kw, schedule_kw, top_kw = {}, {}, {}
    for key, text in raw.items():
        if key.startswith("scheme."):
            name = key[len("scheme."):]
            if name not in _SCHEME_FIELDS:
                raise ConfigError(f"unknown configuration key {key!r}")
            kind = CouplingVariant if name == "variant" else float
            scheme_kw[name] = _parse_typed(key, text, kind)
        elif key.startswith("schedule."):
            name = key[len("schedule."):]
            if name not in _SCHEDULE_FIELDS:
                raise ConfigError(f"unknown configuration key {key!r}")
            kind = int if name == "signal_channel" else float
            schedule_kw[name] = _parse_typed(key, text, kind)
        elif key in _TOP_FIELDS:
            top_kw[key] = _parse_typed(key, text, _TOP_FIELDS[key])
        else:
            raise ConfigError(f"unknown configuration key {key!r}")

    config = replace(
        base,
        scheme=replace(base.scheme, **scheme_kw),
        schedule=replace(base.schedule, **schedule_kw),
        **top_kw,
    )
    config.validate()
    return config
