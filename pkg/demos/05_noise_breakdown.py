#!/usr/bin/env python3
"""Where the background counts come from, setup by setup.

Per-detector counts per pulse split into forward Raman, backward Raman,
bulb light and dark counts, versus feeder length (PSD 1e-5 W/nm, 10 dB
coupling).  All three optical noise sources sit at or above the 1e-7
dark-count floor, which is the point of modelling them.
"""

from qkd_access import SimulationConfig, noise_breakdown

cfg = SimulationConfig.from_dict({"case": 3, "bulb": {"psd_w_per_nm": 1e-5}})
lengths = [1.0, 5.0, 10.0, 25.0, 50.0, 100.0, 150.0, 200.0]

for setup in (2, 3):
    table = noise_breakdown(setup, cfg, lengths)
    print(f"=== setup {setup} (counts per detector per pulse) ===")
    print(f"{'L0 (km)':>8} {'forward':>10} {'backward':>10} {'bulb':>10} {'dark':>10} {'total':>10}")
    for l0, frs, brs, bulb, dark, total in table.rows:
        print(f"{l0:8.0f} {frs:10.2e} {brs:10.2e} {bulb:10.2e} {dark:10.2e} {total:10.2e}")
    ratio = {row[0]: row[2] / row[1] for row in table.rows}
    print(f"backward/forward ratio: {ratio[10.0]:.2f} at 10 km, {ratio[200.0]:.0f} at 200 km")
    print()

print("Backward scattering overtakes everything at long spans (the power")
print("control rule again); bulb light dominates short spans in setup 3")
print("because it only has to clear the coupling loss, not the fiber, to")
print("reach the measurement node.")
