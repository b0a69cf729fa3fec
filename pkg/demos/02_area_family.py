"""Release amplitude controlled by the area of the storage-stage pulse.

Variant A: after the signal is stored as the b-c coherence, a laser on
the c-d transition runs for a chosen pulse area theta.  Only the part of
the coherence proportional to cos(theta) couples back to the light, so
the released pulse is lowered, fully damped (theta = pi/2), or released
with its sign reversed (theta beyond pi/2); the sin(theta) part stays in
the medium.

Writes one CSV per area plus summary.csv under demos/out/area_family/.
"""

import math
from pathlib import Path

import numpy as np

from lightstore import CouplingVariant, save_runs, sweep_pulse_area
from lightstore.scenarios import desk_config

OUT = Path(__file__).parent / "out" / "area_family"

thetas = [0.0, math.pi / 6, math.pi / 4, math.pi / 3,
          math.pi / 2, 3 * math.pi / 4, math.pi]
config = desk_config(CouplingVariant.CASE_A)
results = sweep_pulse_area(config, thetas)

entries = [(f"theta_{theta:.6f}.csv", res) for theta, res in zip(thetas, results)]
save_runs(OUT, entries, config)
print(f"wrote {len(entries)} runs to {OUT}")

peak0 = results[0].peak_amp_1
print("\n area/pi   peak ratio   cos(theta)   residual excitation")
for theta, res in zip(thetas, results):
    print(
        f"  {theta / math.pi:5.3f}    {res.peak_amp_1 / peak0:+8.4f}    "
        f"{math.cos(theta):+8.4f}     {res.residual_coherence_norm:.3e}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for k, (theta, res) in enumerate(zip(thetas, results), start=1):
        mask = res.times >= res.release_start
        ax.plot(res.times[mask] / 1e10, res.out1[mask].real / 1e-11,
                label=f"curve {k}: {theta / math.pi:.3f} pi")
    ax.set_xlabel("local time t' (1e10 a.u.)")
    ax.set_ylabel("released field 1 (1e-11 a.u.)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(OUT / "area_family.png", dpi=150)
    print(f"\nquick-look figure: {OUT / 'area_family.png'}")
except ImportError:
    print("\nmatplotlib not installed; CSVs only (see the figplots renderer)")
