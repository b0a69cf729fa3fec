"""Continuous switching of the released light between two channels.

Variant B: the states b and d are nearly degenerate and linked by an
effective coupling of magnitude U while a second weak signal channel
connects d to the excited state.  A storage-stage pulse of area theta
rotates the stored coherence between sigma_bc and sigma_dc, so the
release distributes the light over the two signal channels:

  theta = pi/2 -> only channel 3,
  theta = pi   -> only channel 1 with reversed sign,
  in between   -> both, with heights under continuous control.

Writes one CSV per area plus summary.csv under demos/out/two_channel/.
"""

import math
from pathlib import Path

from lightstore import CouplingVariant, save_runs, sweep_pulse_area
from lightstore.scenarios import desk_config

OUT = Path(__file__).parent / "out" / "two_channel"

thetas = [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi]
config = desk_config(CouplingVariant.CASE_B)
results = sweep_pulse_area(config, thetas)

entries = [(f"theta_{theta:.6f}.csv", res) for theta, res in zip(thetas, results)]
save_runs(OUT, entries, config)
print(f"wrote {len(entries)} runs to {OUT}")

print("\n area/pi    E1           E3           peak1        peak3")
for theta, res in zip(thetas, results):
    print(
        f"  {theta / math.pi:5.3f}   {res.released_energy_1:.3e}   "
        f"{res.released_energy_3:.3e}   {res.peak_amp_1:+.3e}   "
        f"{res.peak_amp_3:+.3e}"
    )
