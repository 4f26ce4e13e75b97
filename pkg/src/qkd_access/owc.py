"""Indoor optical-wireless channel model.

Line-of-sight transmittance of a Lambertian source seen by a ceiling
receiver with a non-imaging concentrator, plus a parametric estimate of
the background photon count contributed by the room's artificial light
source.

Three transmitter placements are supported:

* case 1 -- transmitter at the centre of the floor, wide beam, pointing up;
* case 2 -- same transmitter moved to a corner of the room, still pointing up;
* case 3 -- transmitter in the corner with a narrow beam aimed straight at
  the receiver.

In every case the receiver sits at the centre of the ceiling and its
telescope is dynamically steered onto the source, so the incidence angle
relative to the receiver axis is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import c, h

__all__ = [
    "RoomScenario",
    "BulbNoiseModel",
    "lambertian_order",
    "concentrator_gain",
    "los_gain_from_angles",
    "los_dc_gain",
    "bulb_noise_count",
]

CASE_LABELS = (1, 2, 3)


def lambertian_order(semi_angle_deg: float) -> float:
    """Lambertian mode number of a source with the given half-power semi-angle.

    m = -ln 2 / ln(cos(semi_angle)).  A 60 degree semi-angle gives m = 1
    (ideal Lambertian); narrow beams give large m.
    """
    if not 0.0 < semi_angle_deg < 90.0:
        raise ValueError(f"semi-angle must be in (0, 90) degrees, got {semi_angle_deg}")
    return -math.log(2.0) / math.log(math.cos(math.radians(semi_angle_deg)))


def concentrator_gain(incidence_deg: float, fov_deg: float, refractive_index: float) -> float:
    """Gain of an ideal non-imaging concentrator.

    n^2 / sin^2(FOV) for incidence angles inside the field of view, zero
    outside.
    """
    if incidence_deg < 0.0:
        raise ValueError(f"incidence angle must be >= 0, got {incidence_deg}")
    if incidence_deg > fov_deg:
        return 0.0
    s = math.sin(math.radians(fov_deg))
    return refractive_index**2 / (s * s)


def los_gain_from_angles(
    distance_m: float,
    order: float,
    area_m2: float,
    irradiance_deg: float,
    incidence_deg: float,
    fov_deg: float,
    refractive_index: float,
    filter_transmission: float = 1.0,
) -> float:
    """Line-of-sight DC gain for explicit geometry angles.

    H = A (m+1) / (2 pi d^2) * cos^m(irradiance) * T_s * g(incidence)
        * cos(incidence)
    for incidence angles within the field of view, zero otherwise.  The
    result is clamped to [0, 1]: with a narrow source and a high-gain
    concentrator the formula can exceed unity at short range, which is
    unphysical for a passive channel.
    """
    if distance_m <= 0.0:
        raise ValueError(f"transmitter-receiver distance must be > 0, got {distance_m}")
    if incidence_deg > fov_deg:
        return 0.0
    gain = (
        area_m2
        * (order + 1.0)
        / (2.0 * math.pi * distance_m**2)
        * math.cos(math.radians(irradiance_deg)) ** order
        * filter_transmission
        * concentrator_gain(incidence_deg, fov_deg, refractive_index)
        * math.cos(math.radians(incidence_deg))
    )
    return min(max(gain, 0.0), 1.0)


@dataclass(frozen=True)
class RoomScenario:
    """Room geometry and transceiver placement for one of the three cases.

    The transmitter sits on the floor at (tx_x_m, tx_y_m, 0); the receiver
    is fixed at the ceiling centre (room_x_m/2, room_y_m/2, room_z_m).
    """

    room_x_m: float = 4.0
    room_y_m: float = 4.0
    room_z_m: float = 3.0
    tx_x_m: float = 2.0
    tx_y_m: float = 2.0
    tx_semi_angle_deg: float = 20.0
    rx_fov_deg: float = 6.0
    concentrator_index: float = 1.5
    detector_area_m2: float = 1e-4
    filter_transmission: float = 1.0
    case: int = 1

    def __post_init__(self):
        if self.case not in CASE_LABELS:
            raise ValueError(f"case must be one of {CASE_LABELS}, got {self.case}")
        if not 0.0 < self.tx_semi_angle_deg < 90.0:
            raise ValueError(f"source semi-angle out of range: {self.tx_semi_angle_deg}")
        if not 0.0 < self.rx_fov_deg < 90.0:
            raise ValueError(f"receiver FOV out of range: {self.rx_fov_deg}")
        if self.concentrator_index < 1.0:
            raise ValueError(f"concentrator index must be >= 1, got {self.concentrator_index}")
        if self.detector_area_m2 <= 0.0:
            raise ValueError(f"detector area must be > 0, got {self.detector_area_m2}")
        if not 0.0 < self.filter_transmission <= 1.0:
            raise ValueError(f"filter transmission must be in (0, 1], got {self.filter_transmission}")
        if not (0.0 <= self.tx_x_m <= self.room_x_m and 0.0 <= self.tx_y_m <= self.room_y_m):
            raise ValueError("transmitter must lie inside the room footprint")
        if min(self.room_x_m, self.room_y_m, self.room_z_m) <= 0.0:
            raise ValueError("room dimensions must be positive")

    @property
    def rx_position_m(self) -> tuple[float, float, float]:
        return (self.room_x_m / 2.0, self.room_y_m / 2.0, self.room_z_m)

    @property
    def distance_m(self) -> float:
        """Transmitter-receiver separation."""
        rx, ry, rz = self.rx_position_m
        return math.sqrt((rx - self.tx_x_m) ** 2 + (ry - self.tx_y_m) ** 2 + rz**2)

    @property
    def irradiance_deg(self) -> float:
        """Angle between the source axis and the line to the receiver.

        Cases 1 and 2 point the source straight up, so this is the angle
        of the transmitter-receiver line from vertical.  Case 3 aims the
        source at the receiver, making the irradiance angle zero.
        """
        if self.case == 3:
            return 0.0
        return math.degrees(math.acos(self.room_z_m / self.distance_m))

    @property
    def incidence_deg(self) -> float:
        """Incidence angle at the receiver; zero because the telescope steers."""
        return 0.0


def los_dc_gain(scenario: RoomScenario) -> float:
    """Channel transmittance of the wireless link for a placement scenario."""
    return los_gain_from_angles(
        distance_m=scenario.distance_m,
        order=lambertian_order(scenario.tx_semi_angle_deg),
        area_m2=scenario.detector_area_m2,
        irradiance_deg=scenario.irradiance_deg,
        incidence_deg=scenario.incidence_deg,
        fov_deg=scenario.rx_fov_deg,
        refractive_index=scenario.concentrator_index,
        filter_transmission=scenario.filter_transmission,
    )


@dataclass(frozen=True)
class BulbNoiseModel:
    """Parametric background-noise model for the room's light source.

    The photon count per detection gate is

        n_B = collection_factor * psd * bandwidth * gate / (h c / wavelength).

    The collection factor lumps together everything between the bulb and
    the detector (reflections, solid angle, FOV filtering); it has to be
    calibrated, since the radiometric detail is outside this model.
    """

    psd_w_per_nm: float
    filter_bandwidth_nm: float = 0.8
    gate_s: float = 100e-12
    wavelength_m: float = 1555.62e-9
    collection_factor: float = 2.4e-7

    def __post_init__(self):
        if self.psd_w_per_nm < 0.0:
            raise ValueError(f"PSD must be >= 0, got {self.psd_w_per_nm}")
        for name in ("filter_bandwidth_nm", "gate_s", "wavelength_m"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if not 0.0 < self.collection_factor <= 1.0:
            raise ValueError(f"collection factor must be in (0, 1], got {self.collection_factor}")


def bulb_noise_count(model: BulbNoiseModel) -> float:
    """Background photons per gate collected from the light source."""
    photon_energy_j = h * c / model.wavelength_m
    collected_j = (
        model.collection_factor
        * model.psd_w_per_nm
        * model.filter_bandwidth_nm
        * model.gate_s
    )
    return collected_j / photon_energy_j
