"""Storage, coherent manipulation and release of weak light in four-level media.

Numerical engine for the coupled density-matrix / slowly-varying-envelope
equations of a quasi one-dimensional four-level medium, together with the
dark-state-polariton closed forms that predict its behaviour: pulse-area
controlled damping, sign reversal and channel switching of the released
light.  Atomic units throughout.
"""

from .core import (
    C_LIGHT,
    EPSILON_0,
    HBAR,
    ConfigError,
    CouplingVariant,
    LevelScheme,
    NumericalFailure,
    PulseSchedule,
    SimulationConfig,
    default_config,
    dipole_from_rate,
    dump_config,
    ground_state,
    load_config,
    rate_from_dipole,
    suggested_dt,
)
from .bloch import LocalFields, bloch_rhs, hamiltonian, rhs_case_a, rhs_case_b, step_cell
from .field import MediumState, advance, coupling_constant, initial_state, propagate_window
from .polariton import (
    MixingMatrix,
    RotatedCoherences,
    dark_polariton_3,
    dark_polariton_4,
    mixing_matrix,
    polariton_velocity,
    rotate_coherences,
    rotate_pair,
)
from .pulses import (
    control2_envelope,
    control4_envelope,
    duration_for_area,
    pulse_area,
    signal_envelope,
)
from .scenarios import (
    MeasurementError,
    ScenarioResult,
    desk_config,
    measure_group_delay,
    run_overlap_scenario,
    run_slow_light,
    run_storage_cycle,
    save_runs,
    sweep_pulse_area,
    with_area_window,
)

__version__ = "0.1.0"
