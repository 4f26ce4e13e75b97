"""Per-setup link budgets: transmissivity and background noise for user 1.

Four network setups are modelled:

* setup 1 -- trusted relay on the ceiling; independent wireless (880 nm
  band) and fiber (telecom band) links whose keys are combined by XOR;
* setup 2 -- wireless signal coupled straight into the feeder fiber and
  measured at the central office;
* setup 3 -- untrusted Bell-state measurement at the user's end;
* setup 4 -- untrusted Bell-state measurement at the PON splitting point.

Each budget folds the wireless transmittance, fiber/AWG losses, Raman
scattering from the other users' classical channels, the bulb background
and detector dark counts into either (transmissivity, noise per detector)
for direct-detection protocols or (transmissivity, excess noise) for the
coherent-detection one.  Key-rate formulas live in ``protocols``.

The classical launch power follows a fixed receiver-sensitivity rule: each
data transmitter raises its power with path loss so the received power
stays constant, which is why Raman noise grows with fiber length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import c, h

from .numerics import AttenuationCoefficient
from .owc import BulbNoiseModel, RoomScenario, bulb_noise_count, los_dc_gain
from .raman import RamanCrossSectionTable, RamanQuery, raman_backward, raman_forward

__all__ = [
    "DEFAULT_SENSITIVITY_DBM",
    "DetectorParams",
    "DwdmPlan",
    "LinkBudget",
    "CvLinkBudget",
    "MdiLinkBudget",
    "launch_power",
    "fiber_transmittance",
    "raman_totals_setup1",
    "raman_totals_setup3",
    "raman_totals_setup4",
    "budget_setup1_wireless",
    "budget_setup1_fiber",
    "budget_setup2",
    "budget_setup3",
    "budget_setup4",
    "cv_budget",
]

# Receiver sensitivity (dBm) guaranteeing the classical channels' target BER.
DEFAULT_SENSITIVITY_DBM = -38.5

DEFAULT_CHANNEL_SPACING_NM = 0.8  # 100 GHz in the C band


@dataclass(frozen=True)
class DetectorParams:
    """Single-photon detector parameters for the DV receivers."""

    eta_wireless: float = 0.6  # Si APD efficiency, 880 nm band
    eta_telecom: float = 0.3  # InGaAs APD efficiency, 1550 nm band
    dark_count_per_pulse: float = 1e-7
    gate_s: float = 100e-12

    def __post_init__(self):
        for name in ("eta_wireless", "eta_telecom"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if not 0.0 <= self.dark_count_per_pulse < 1.0:
            raise ValueError("dark count per pulse must be in [0, 1)")
        if self.gate_s <= 0.0:
            raise ValueError("gate duration must be > 0")


@dataclass(frozen=True)
class DwdmPlan:
    """Wavelength plan and fiber layout of the access network.

    ``quantum_nm[0]`` / ``data_nm[0]`` belong to user 1, the user whose key
    rate is evaluated.  ``drop_km[k]`` is the distance of user k+1 from the
    splitting point; ``feeder_km`` is the shared feeder to the central
    office.
    """

    quantum_nm: tuple[float, ...]
    data_nm: tuple[float, ...]
    feeder_km: float = 10.0
    drop_km: tuple[float, ...] = ()
    awg_insertion_loss_db: float = 2.0
    attenuation: AttenuationCoefficient = AttenuationCoefficient(0.2)
    sensitivity_dbm: float = DEFAULT_SENSITIVITY_DBM

    def __post_init__(self):
        if len(self.quantum_nm) != len(self.data_nm) or not self.quantum_nm:
            raise ValueError("quantum and data grids must be non-empty and equally sized")
        if set(self.quantum_nm) & set(self.data_nm):
            raise ValueError("quantum and data grids must be disjoint")
        if not self.drop_km:
            object.__setattr__(self, "drop_km", (0.5,) * len(self.quantum_nm))
        if len(self.drop_km) != len(self.quantum_nm):
            raise ValueError("need one drop length per user")
        if self.feeder_km < 0.0 or min(self.drop_km) < 0.0:
            raise ValueError("fiber lengths must be >= 0")
        if self.awg_insertion_loss_db < 0.0:
            raise ValueError("AWG insertion loss must be >= 0")

    @classmethod
    def from_grid(
        cls,
        n_users: int = 32,
        quantum_start_nm: float = 1555.62,
        data_start_nm: float = 1585.2,
        spacing_nm: float = DEFAULT_CHANNEL_SPACING_NM,
        **kwargs,
    ) -> "DwdmPlan":
        """Build the grids from user 1's wavelengths on a fixed spacing.

        User 1 takes the top wavelength of each band (the quantum channel
        closest to the data band); the remaining users step down from it.
        """
        if n_users < 1:
            raise ValueError("need at least one user")
        quantum = tuple(quantum_start_nm - spacing_nm * k for k in range(n_users))
        data = tuple(data_start_nm - spacing_nm * k for k in range(n_users))
        return cls(quantum_nm=quantum, data_nm=data, **kwargs)

    @property
    def n_users(self) -> int:
        return len(self.quantum_nm)

    def launch_power_mw(self, user: int) -> float:
        """Launch power of a user's data transmitter under the sensitivity rule."""
        total_km = self.feeder_km + self.drop_km[user]
        return launch_power(
            total_km,
            self.attenuation.db_per_km,
            self.awg_insertion_loss_db,
            self.sensitivity_dbm,
        )


@dataclass(frozen=True)
class LinkBudget:
    """Transmissivity and per-detector noise consumed by the BB84 formulas."""

    transmissivity: float
    frs: float = 0.0
    brs: float = 0.0
    bulb: float = 0.0
    dark: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.transmissivity <= 1.0:
            raise ValueError(f"transmissivity must be in [0, 1], got {self.transmissivity}")
        if min(self.frs, self.brs, self.bulb, self.dark) < 0.0:
            raise ValueError("noise components must be >= 0")
        if self.noise_per_detector >= 1.0:
            raise ValueError("total noise per detector must stay below one count per pulse")

    @property
    def noise_per_detector(self) -> float:
        """Background plus dark counts per detector per pulse."""
        return self.frs + self.brs + self.bulb + self.dark


@dataclass(frozen=True)
class MdiLinkBudget:
    """Two-sided budget for the untrusted-measurement setups."""

    eta_alice: float
    eta_bob: float
    frs: float = 0.0
    brs: float = 0.0
    bulb: float = 0.0
    dark: float = 0.0
    polarization_factor: float = 0.5

    def __post_init__(self):
        for name in ("eta_alice", "eta_bob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if min(self.frs, self.brs, self.bulb, self.dark) < 0.0:
            raise ValueError("noise components must be >= 0")
        if self.noise_per_detector >= 1.0:
            raise ValueError("total noise per detector must stay below one count per pulse")

    @property
    def noise_per_detector(self) -> float:
        return self.frs + self.brs + self.bulb + self.dark


@dataclass(frozen=True)
class CvLinkBudget:
    """Channel transmissivity and input-referred excess noise (shot-noise units)."""

    transmissivity: float
    eps_bulb: float = 0.0
    eps_raman: float = 0.0
    eps_receiver: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.transmissivity <= 1.0:
            raise ValueError("CV budget needs transmissivity in (0, 1]")
        if min(self.eps_bulb, self.eps_raman, self.eps_receiver) < 0.0:
            raise ValueError("excess-noise components must be >= 0")

    @property
    def excess_noise(self) -> float:
        return self.eps_bulb + self.eps_raman + self.eps_receiver


def launch_power(
    length_km: float,
    alpha_db_per_km: float,
    awg_db: float,
    sensitivity_dbm: float = DEFAULT_SENSITIVITY_DBM,
) -> float:
    """Classical launch power (mW) that meets the receiver sensitivity.

    The transmitter compensates the fiber loss over the full path plus two
    multiplexer passes, so received power is constant regardless of reach.
    """
    if length_km < 0.0:
        raise ValueError(f"path length must be >= 0, got {length_km}")
    return 10.0 ** ((sensitivity_dbm + alpha_db_per_km * length_km + 2.0 * awg_db) / 10.0)


def fiber_transmittance(
    feeder_km: float, drop_km: float, alpha_db_per_km: float, awg_db: float
) -> float:
    """End-to-end fiber transmittance including two multiplexer passes."""
    if feeder_km < 0.0 or drop_km < 0.0:
        raise ValueError("fiber lengths must be >= 0")
    return 10.0 ** (-(alpha_db_per_km * (feeder_km + drop_km) + 2.0 * awg_db) / 10.0)


def _query(plan: DwdmPlan, intensity_mw, length_km, pump_nm, rx_bandwidth_nm) -> RamanQuery:
    return RamanQuery(
        intensity_mw=intensity_mw,
        length_km=length_km,
        pump_nm=pump_nm,
        rx_nm=plan.quantum_nm[0],
        rx_bandwidth_nm=rx_bandwidth_nm,
        attenuation=plan.attenuation,
    )


def raman_totals_setup1(
    plan: DwdmPlan,
    table: RamanCrossSectionTable,
    rx_bandwidth_nm: float = 0.8,
) -> tuple[float, float]:
    """Total forward/backward Raman power (mW) at user 1's receiver wavelength,
    for a receiver at the central office (setups 1-fiber and 2).

    Forward noise from user 1 accumulates over its whole path; the other
    users' contributions only count over the shared feeder because the
    multiplexer filters what they generate on their own drops.  Backward
    noise comes from the downstream transmitters at the central office,
    whose light enters the feeder unattenuated.
    """
    alpha = plan.attenuation.per_km
    feeder, drops = plan.feeder_km, plan.drop_km
    awg = 10.0 ** (-2.0 * plan.awg_insertion_loss_db / 10.0)

    own = plan.launch_power_mw(0)
    fwd = raman_forward(
        _query(plan, own, feeder + drops[0], plan.data_nm[0], rx_bandwidth_nm), table
    )
    bwd = raman_backward(
        _query(plan, own, feeder + drops[0], plan.data_nm[0], rx_bandwidth_nm), table
    )
    for k in range(1, plan.n_users):
        power = plan.launch_power_mw(k)
        fwd += raman_forward(
            _query(plan, power * math.exp(-alpha * drops[k]), feeder, plan.data_nm[k], rx_bandwidth_nm),
            table,
        )
        bwd += raman_backward(
            _query(plan, power, feeder, plan.data_nm[k], rx_bandwidth_nm), table
        )
    return fwd * awg, bwd * awg


def raman_totals_setup3(
    plan: DwdmPlan,
    table: RamanCrossSectionTable,
    rx_bandwidth_nm: float = 0.8,
) -> tuple[float, float]:
    """Raman power totals for a measurement module at user 1's premises.

    The other users' noise is generated along the feeder and then crosses
    user 1's drop, hence the common exp(-alpha L_1) attenuation; backward
    contributions start from launch powers already attenuated over the
    contributing user's drop.
    """
    alpha = plan.attenuation.per_km
    feeder, drops = plan.feeder_km, plan.drop_km
    awg = 10.0 ** (-2.0 * plan.awg_insertion_loss_db / 10.0)
    drop_loss = math.exp(-alpha * drops[0])

    own = plan.launch_power_mw(0)
    fwd = raman_forward(
        _query(plan, own, feeder + drops[0], plan.data_nm[0], rx_bandwidth_nm), table
    )
    bwd = raman_backward(
        _query(plan, own, feeder + drops[0], plan.data_nm[0], rx_bandwidth_nm), table
    )
    fwd_rest = 0.0
    bwd_rest = 0.0
    for k in range(1, plan.n_users):
        power = plan.launch_power_mw(k)
        fwd_rest += raman_forward(
            _query(plan, power, feeder, plan.data_nm[k], rx_bandwidth_nm), table
        )
        bwd_rest += raman_backward(
            _query(plan, power * math.exp(-alpha * drops[k]), feeder, plan.data_nm[k], rx_bandwidth_nm),
            table,
        )
    return (fwd + drop_loss * fwd_rest) * awg, (bwd + drop_loss * bwd_rest) * awg


def raman_totals_setup4(
    plan: DwdmPlan,
    table: RamanCrossSectionTable,
    rx_bandwidth_nm: float = 0.8,
) -> tuple[float, float]:
    """Raman power totals for a measurement module at the splitting point.

    Forward noise comes from all downstream channels over the feeder plus
    user 1's upstream channel over its drop (the latter reaches the module
    without passing the multiplexers).  Backward noise comes from the
    upstream channels' backscatter over the feeder and the downstream
    user-1 channel's backscatter over the drop.
    """
    alpha = plan.attenuation.per_km
    feeder, drops = plan.feeder_km, plan.drop_km
    awg = 10.0 ** (-2.0 * plan.awg_insertion_loss_db / 10.0)

    own = plan.launch_power_mw(0)
    fwd_mux = raman_forward(_query(plan, own, feeder, plan.data_nm[0], rx_bandwidth_nm), table)
    bwd = raman_backward(
        _query(plan, own * math.exp(-alpha * drops[0]), feeder, plan.data_nm[0], rx_bandwidth_nm),
        table,
    )
    for k in range(1, plan.n_users):
        power = plan.launch_power_mw(k)
        fwd_mux += raman_forward(
            _query(plan, power, feeder, plan.data_nm[k], rx_bandwidth_nm), table
        )
        bwd += raman_backward(
            _query(plan, power * math.exp(-alpha * drops[k]), feeder, plan.data_nm[k], rx_bandwidth_nm),
            table,
        )
    bwd += raman_backward(
        _query(plan, own * math.exp(-alpha * feeder), drops[0], plan.data_nm[0], rx_bandwidth_nm),
        table,
    )
    fwd_direct = raman_forward(
        _query(plan, own, drops[0], plan.data_nm[0], rx_bandwidth_nm), table
    )
    return fwd_mux * awg + fwd_direct, bwd * awg


def _photons_per_gate(power_mw: float, rx_nm: float, gate_s: float) -> float:
    """Photons per gate in an ideal detector for a given optical power."""
    return power_mw * 1e-3 * gate_s * (rx_nm * 1e-9) / (h * c)


def budget_setup1_wireless(
    scenario: RoomScenario,
    bulb: BulbNoiseModel,
    det: DetectorParams,
    n_b1_override: float | None = None,
) -> LinkBudget:
    """Budget of the indoor link between the user and the ceiling relay.

    The factor 1/2 is the loss of the passive time-bin decoder.
    """
    n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
    half_det = det.eta_wireless / 2.0
    return LinkBudget(
        transmissivity=los_dc_gain(scenario) * half_det,
        bulb=n_b1 * half_det,
        dark=det.dark_count_per_pulse,
    )


def budget_setup1_fiber(
    plan: DwdmPlan,
    det: DetectorParams,
    table: RamanCrossSectionTable,
    rx_bandwidth_nm: float = 0.8,
) -> LinkBudget:
    """Budget of the relay-to-central-office fiber link."""
    fwd, bwd = raman_totals_setup1(plan, table, rx_bandwidth_nm)
    count = det.eta_telecom / 2.0 * _photons_per_gate(1.0, plan.quantum_nm[0], det.gate_s)
    eta_fib = fiber_transmittance(
        plan.feeder_km, plan.drop_km[0], plan.attenuation.db_per_km, plan.awg_insertion_loss_db
    )
    return LinkBudget(
        transmissivity=eta_fib * det.eta_telecom / 2.0,
        frs=count * fwd,
        brs=count * bwd,
        dark=det.dark_count_per_pulse,
    )


def budget_setup2(
    scenario: RoomScenario,
    bulb: BulbNoiseModel,
    plan: DwdmPlan,
    det: DetectorParams,
    table: RamanCrossSectionTable,
    coupling_loss_db: float = 10.0,
    rx_bandwidth_nm: float = 0.8,
    n_b1_override: float | None = None,
) -> LinkBudget:
    """Budget of the relay-free link: room, coupling lens, fiber, office.

    Bulb photons ride down the same fiber as the signal, so they see the
    air-to-fiber coupling loss and the full fiber attenuation before the
    receiver.
    """
    fwd, bwd = raman_totals_setup1(plan, table, rx_bandwidth_nm)  # same totals as setup 1
    n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
    eta_coup = 10.0 ** (-coupling_loss_db / 10.0)
    eta_fib = fiber_transmittance(
        plan.feeder_km, plan.drop_km[0], plan.attenuation.db_per_km, plan.awg_insertion_loss_db
    )
    half_det = det.eta_telecom / 2.0
    count = half_det * _photons_per_gate(1.0, plan.quantum_nm[0], det.gate_s)
    return LinkBudget(
        transmissivity=los_dc_gain(scenario) * eta_coup * eta_fib * half_det,
        frs=count * fwd,
        brs=count * bwd,
        bulb=half_det * n_b1 * eta_fib * eta_coup,
        dark=det.dark_count_per_pulse,
    )


def budget_setup3(
    scenario: RoomScenario,
    bulb: BulbNoiseModel,
    plan: DwdmPlan,
    det: DetectorParams,
    table: RamanCrossSectionTable,
    coupling_loss_db: float = 10.0,
    rx_bandwidth_nm: float = 0.8,
    polarization_factor: float = 0.5,
    n_b1_override: float | None = None,
) -> MdiLinkBudget:
    """Budget for the measurement module at the user's end.

    The quarter factor on the noise reflects that only one polarization
    enters the measurement; ``polarization_factor`` models the matching
    loss (0.5 for passive filtering, 1.0 for active stabilization).
    """
    fwd, bwd = raman_totals_setup3(plan, table, rx_bandwidth_nm)
    n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
    eta_coup = 10.0 ** (-coupling_loss_db / 10.0)
    eta_fib = fiber_transmittance(
        plan.feeder_km, plan.drop_km[0], plan.attenuation.db_per_km, plan.awg_insertion_loss_db
    )
    quarter = det.eta_telecom / 4.0
    count = quarter * _photons_per_gate(1.0, plan.quantum_nm[0], det.gate_s)
    return MdiLinkBudget(
        eta_alice=los_dc_gain(scenario) * det.eta_telecom * eta_coup * polarization_factor,
        eta_bob=det.eta_telecom * eta_fib * polarization_factor,
        frs=count * fwd,
        brs=count * bwd,
        bulb=quarter * n_b1 * eta_coup,
        dark=det.dark_count_per_pulse,
        polarization_factor=polarization_factor,
    )


def budget_setup4(
    scenario: RoomScenario,
    bulb: BulbNoiseModel,
    plan: DwdmPlan,
    det: DetectorParams,
    table: RamanCrossSectionTable,
    coupling_loss_db: float = 10.0,
    rx_bandwidth_nm: float = 0.8,
    polarization_factor: float = 0.5,
    n_b1_override: float | None = None,
) -> MdiLinkBudget:
    """Budget for the measurement module at the splitting point.

    Relative to setup 3, everything coming from the room additionally
    crosses user 1's drop fiber, and the office side is one drop shorter.
    """
    fwd, bwd = raman_totals_setup4(plan, table, rx_bandwidth_nm)
    n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
    alpha_db = plan.attenuation.db_per_km
    drop_loss = 10.0 ** (-alpha_db * plan.drop_km[0] / 10.0)
    eta_coup = 10.0 ** (-coupling_loss_db / 10.0)
    quarter = det.eta_telecom / 4.0
    count = quarter * _photons_per_gate(1.0, plan.quantum_nm[0], det.gate_s)
    eta_bob = 10.0 ** (-(alpha_db * plan.feeder_km + 2.0 * plan.awg_insertion_loss_db) / 10.0)
    return MdiLinkBudget(
        eta_alice=los_dc_gain(scenario) * det.eta_telecom * eta_coup * drop_loss * polarization_factor,
        eta_bob=det.eta_telecom * eta_bob * polarization_factor,
        frs=count * fwd,
        brs=count * bwd,
        bulb=quarter * n_b1 * eta_coup * drop_loss,
        dark=det.dark_count_per_pulse,
        polarization_factor=polarization_factor,
    )


def cv_budget(
    setup: str,
    scenario: RoomScenario | None = None,
    bulb: BulbNoiseModel | None = None,
    plan: DwdmPlan | None = None,
    table: RamanCrossSectionTable | None = None,
    coupling_loss_db: float = 10.0,
    rx_bandwidth_nm: float = 0.8,
    receiver_efficiency: float = 0.6,
    eps_receiver_measured: float = 0.002,
    gate_s: float = 100e-12,
    n_b1_override: float | None = None,
) -> CvLinkBudget:
    """Channel budget for the coherent-detection protocol.

    ``setup`` is one of ``"1-wireless"``, ``"1-fiber"`` or ``"2"``.  Noise
    counts are referred to the channel input with the chaotic-light rule
    (input excess = 2n / transmissivity); the local oscillator already
    filters the background to a single matched mode, which takes half the
    raw count, so the bulb term comes out as n_B / H_dc.  The residual
    receiver noise measured at the detector is referred back through both
    the channel and the receiver efficiency.
    """
    if setup not in ("1-wireless", "1-fiber", "2"):
        raise ValueError(f"coherent detection applies to setups 1 and 2 only, got {setup!r}")

    eps_bulb = 0.0
    eps_raman = 0.0
    if setup == "1-wireless":
        h_dc = los_dc_gain(scenario)
        transmissivity = h_dc
        n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
        if transmissivity <= 0.0:
            raise ValueError("channel transmissivity is zero; budget undefined")
        eps_bulb = n_b1 / h_dc
    else:
        fwd, bwd = raman_totals_setup1(plan, table, rx_bandwidth_nm)
        raman_count = _photons_per_gate(1.0, plan.quantum_nm[0], gate_s) * (fwd + bwd)
        eta_fib = fiber_transmittance(
            plan.feeder_km, plan.drop_km[0], plan.attenuation.db_per_km, plan.awg_insertion_loss_db
        )
        if setup == "1-fiber":
            transmissivity = eta_fib
        else:
            h_dc = los_dc_gain(scenario)
            eta_coup = 10.0 ** (-coupling_loss_db / 10.0)
            transmissivity = h_dc * eta_coup * eta_fib
            n_b1 = bulb_noise_count(bulb) if n_b1_override is None else n_b1_override
            if h_dc <= 0.0:
                raise ValueError("channel transmissivity is zero; budget undefined")
            eps_bulb = n_b1 / h_dc
        if transmissivity <= 0.0:
            raise ValueError("channel transmissivity is zero; budget undefined")
        eps_raman = raman_count / transmissivity

    eps_receiver = eps_receiver_measured / (transmissivity * receiver_efficiency)
    return CvLinkBudget(
        transmissivity=transmissivity,
        eps_bulb=eps_bulb,
        eps_raman=eps_raman,
        eps_receiver=eps_receiver,
    )
