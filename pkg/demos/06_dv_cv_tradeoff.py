#!/usr/bin/env python3
"""Direct detection versus coherent detection on the relay-free link.

The coherent (GG02) receiver filters background into a single matched
mode, so at low coupling loss it tolerates far more room light than the
photon-counting link; but its key dies once the coupling loss referred to
its receiver noise grows, while weak-pulse BB84 keeps going for tens of
dB.  Throughput-wise the coherent system's lower clock means the photon
counters win once their clock exceeds a crossover in the 100s of MHz.
"""

from qkd_access import SimulationConfig, SweepSpec, dv_cv_crossover, run_sweep

BASE = {"case": 3, "bulb": {"psd_w_per_nm": 1e-5}}

def rates_vs_coupling(protocol):
    cfg = SimulationConfig.from_dict(BASE)
    spec = SweepSpec(setup=2, protocol=protocol, case=3, variable="coupling_loss_db",
                     start=0.0, stop=40.0, points=41)
    return run_sweep(spec, cfg).rows

print("=== Key rate per pulse vs coupling loss (setup 2, case 3) ===")
dv = rates_vs_coupling("DS-BB84")
cv = rates_vs_coupling("GG02")
print(f"{'loss (dB)':>10} {'DS-BB84':>12} {'GG02':>12}")
for a, b in zip(dv[::5], cv[::5]):
    print(f"{a.value:10.0f} {a.rate_per_pulse:12.3e} {b.rate_per_pulse:12.3e}")
cv_edge = max((row.value for row in cv if row.rate_per_pulse > 0.0), default=0.0)
dv_edge = max((row.value for row in dv if row.rate_per_pulse > 0.0), default=0.0)
print(f"GG02 survives to ~{cv_edge:.0f} dB, DS-BB84 to ~{dv_edge:.0f} dB: full beam")
print("steering is non-negotiable for the coherent option.")

print()
print("=== Background-noise resilience vs coupling loss ===")
print("(counts per detector for DS-BB84, per matched mode for GG02)")
print(f"{'loss (dB)':>10} {'DV max noise':>14} {'CV max noise':>14}")
for loss in (0.0, 5.0, 10.0, 15.0, 20.0):
    c = SimulationConfig.from_dict({**BASE, "link": {"coupling_loss_db": loss}})
    dv_spec = SweepSpec(setup=2, protocol="DS-BB84", case=3, variable="background_noise",
                        start=1e-9, stop=0.4, points=400, log_spacing=True)
    dv_rows = run_sweep(dv_spec, c).rows
    dv_max = max((r.value for r in dv_rows if r.rate_per_pulse > 0.0), default=0.0)
    cv_spec = SweepSpec(setup=2, protocol="GG02", case=3, variable="background_noise",
                        start=1e-9, stop=0.4, points=400, log_spacing=True)
    cv_rows = run_sweep(cv_spec, c).rows
    cv_max = max((r.value for r in cv_rows if r.rate_per_pulse > 0.0), default=0.0)
    print(f"{loss:10.0f} {dv_max:14.2e} {cv_max:14.2e}")
print("At low loss the coherent link shrugs off orders of magnitude more")
print("background; past ~10 dB the photon counters are the only option.")

print()
print("=== Clock-rate crossover (coupling 5 dB, CV clock 25 MHz) ===")
cfg5 = SimulationConfig.from_dict({**BASE, "link": {"coupling_loss_db": 5.0}})
clock = dv_cv_crossover(cfg5)
print(f"the photon-counting link out-delivers the coherent one above "
      f"{clock / 1e6:.0f} MHz of clock")
