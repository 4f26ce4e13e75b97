#!/usr/bin/env python3
"""Total key throughput versus feeder length at a 1 GHz clock.

Setup 1 (trusted ceiling relay) needs no air-to-fiber coupling and its
final key is the XOR of the two link keys, so its rate is the minimum of
the wireless and fiber rates.  Setup 2 pays 10 dB of coupling loss on top.
The reach difference is much less than the naive 50 km the coupling
budget would suggest, because the power-controlled classical channels
pump ever more Raman noise at long spans.
"""

from qkd_access import SimulationConfig, SweepSpec, run_sweep

cfg = SimulationConfig.from_dict({"case": 3, "bulb": {"psd_w_per_nm": 1e-5}})

def reach(setup):
    spec = SweepSpec(setup=setup, protocol="DS-BB84", case=3, variable="L0_km",
                     start=1.0, stop=120.0, points=120)
    rows = run_sweep(spec, cfg).rows
    return rows, max((row.value for row in rows if row.rate_per_pulse > 0.0), default=0.0)

rows1, reach1 = reach(1)
rows2, reach2 = reach(2)

print("=== Weak-pulse BB84 throughput vs feeder length (case 3) ===")
print(f"{'L0 (km)':>8} {'setup 1 (bps)':>14} {'setup 2 (bps)':>14}")
for r1, r2 in zip(rows1[::12], rows2[::12]):
    print(f"{r1.value:8.0f} {r1.rate_bps:14.3e} {r2.rate_bps:14.3e}")

print()
print(f"maximum reach: setup 1 ~ {reach1:.0f} km, setup 2 (10 dB coupling) ~ {reach2:.0f} km")
print(f"difference {reach1 - reach2:.0f} km, far below the ~50 km the 10 dB")
print("coupling budget alone would buy: backward Raman noise grows with span")
print("because the data transmitters raise their power to hold the received")
print("level constant.")
