"""Slow light in the Lambda medium: group delay versus control power.

A weak probe crosses the medium under a constant control field.  The
energy centroid of the transmitted pulse lags the input by L/v - L/c,
and the measured velocity follows the dark-state-polariton closed form
v = c / (1 + 2 N d1^2 w1 / (hbar eps0 Omega2^2)): halving the control
Rabi frequency roughly quadruples the delay.
"""

from lightstore import CouplingVariant, measure_group_delay, polariton_velocity
from lightstore.core import C_LIGHT
from lightstore.scenarios import desk_config, run_slow_light

config = desk_config(CouplingVariant.CASE_B)

print(f"medium length {config.L:.3e} a.u., density {config.N:.1e} a.u.")
print("scale   v_measured      v_theory        delay (a.u.)   error")
for scale in (1.0, 0.9, 0.8):
    result = run_slow_light(config, omega2_scale=scale)
    v = measure_group_delay(result, result.config)
    omega2 = -config.schedule.eps2_max * scale * config.scheme.d2
    v_th = polariton_velocity(0.0, omega2, config.scheme, config.N)
    delay = config.L / v - config.L / C_LIGHT
    print(
        f"{scale:5.2f}   {v:.6e}   {v_th:.6e}   {delay:.4e}   "
        f"{abs(v - v_th) / v_th * 100:5.2f}%"
    )

print(f"\nvacuum speed of light: {C_LIGHT} a.u. "
      f"(slow-down factor ~{C_LIGHT / v:.0f} at the weakest control)")
