"""Spontaneous Raman scattering noise from co-propagating classical channels.

A classical channel at wavelength ``lambda_pump`` launched with intensity I
into a fiber of length L deposits broadband scattered light into a quantum
receiver of bandwidth ``delta_lambda`` centred at ``lambda_rx``:

    forward:   I * exp(-alpha*L) * L * Gamma * delta_lambda
    backward:  I * (1 - exp(-2*alpha*L)) / (2*alpha) * Gamma * delta_lambda

with alpha the natural-units attenuation coefficient and Gamma the Raman
cross section per km per nm.  Gamma is tabulated for a reference pump
wavelength and translated to other pumps by shifting the pump-receiver
detuning on a frequency axis, which is how the cross section actually
scales across the C band.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.constants import c, h

from .numerics import AttenuationCoefficient

__all__ = [
    "RamanCrossSectionTable",
    "RamanQuery",
    "builtin_cross_section_table",
    "raman_forward",
    "raman_backward",
    "raman_photon_count",
]

CSV_HEADER = ("lambda_q_nm", "gamma_per_km_nm")
BUILTIN_TABLE_RESOURCE = "raman_gamma_1550nm.csv"
BUILTIN_REFERENCE_PUMP_NM = 1550.0


class RamanCrossSectionTable:
    """Raman cross section Gamma(lambda_pump, lambda_rx) from tabulated data.

    The table lists Gamma against receiver wavelength for one reference
    pump.  A query for a different pump is answered at the receiver
    wavelength whose frequency detuning from the reference pump equals the
    query's pump-receiver detuning.  Lookups are linear interpolations;
    queries whose shifted wavelength falls outside the tabulated range
    raise ValueError.
    """

    def __init__(self, wavelengths_nm, gamma_per_km_nm, reference_pump_nm: float):
        wl = np.asarray(wavelengths_nm, dtype=float)
        ga = np.asarray(gamma_per_km_nm, dtype=float)
        if wl.ndim != 1 or wl.size < 2 or wl.shape != ga.shape:
            raise ValueError("table needs matching 1-D wavelength and gamma columns, >= 2 rows")
        if np.any(np.diff(wl) <= 0.0):
            raise ValueError("table wavelengths must be strictly increasing")
        if np.any(ga < 0.0) or not np.all(np.isfinite(ga)):
            raise ValueError("cross sections must be finite and >= 0")
        if reference_pump_nm <= 0.0:
            raise ValueError(f"reference pump wavelength must be > 0, got {reference_pump_nm}")
        self.wavelengths_nm = wl
        self.gamma_per_km_nm = ga
        self.reference_pump_nm = float(reference_pump_nm)
        # Detuning axis (receiver freq minus reference pump freq, Hz),
        # increasing as wavelength decreases; stored flipped for interp.
        nu_ref = c / (self.reference_pump_nm * 1e-9)
        detuning = c / (wl * 1e-9) - nu_ref
        self._detuning_hz = detuning[::-1].copy()
        self._gamma_by_detuning = ga[::-1].copy()

    @classmethod
    def from_csv_text(cls, text: str, reference_pump_nm: float) -> "RamanCrossSectionTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or tuple(s.strip() for s in header) != CSV_HEADER:
            raise ValueError(f"cross-section CSV must start with header {','.join(CSV_HEADER)}")
        wavelengths, gammas = [], []
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError(f"malformed cross-section row: {row!r}")
            wavelengths.append(float(row[0]))
            gammas.append(float(row[1]))
        table = cls(wavelengths, gammas, reference_pump_nm)
        table._source_sha256 = hashlib.sha256(text.encode()).hexdigest()
        return table

    @classmethod
    def from_csv_file(cls, path, reference_pump_nm: float) -> "RamanCrossSectionTable":
        with open(path, "r", encoding="utf-8", newline="") as fh:
            return cls.from_csv_text(fh.read(), reference_pump_nm)

    @property
    def checksum(self) -> str:
        """SHA-256 of the source CSV (or of the numeric content if built in memory)."""
        existing = getattr(self, "_source_sha256", None)
        if existing is not None:
            return existing
        digest = hashlib.sha256()
        digest.update(self.wavelengths_nm.tobytes())
        digest.update(self.gamma_per_km_nm.tobytes())
        digest.update(repr(self.reference_pump_nm).encode())
        return digest.hexdigest()

    def gamma(self, pump_nm: float, rx_nm: float) -> float:
        """Cross section (per km per nm) for a pump/receiver wavelength pair."""
        if pump_nm <= 0.0 or rx_nm <= 0.0:
            raise ValueError("wavelengths must be > 0")
        detuning = c / (rx_nm * 1e-9) - c / (pump_nm * 1e-9)
        lo, hi = self._detuning_hz[0], self._detuning_hz[-1]
        if not lo <= detuning <= hi:
            raise ValueError(
                f"pump {pump_nm} nm / receiver {rx_nm} nm detuning "
                f"{detuning / 1e12:.3f} THz outside table range "
                f"[{lo / 1e12:.3f}, {hi / 1e12:.3f}] THz"
            )
        return float(np.interp(detuning, self._detuning_hz, self._gamma_by_detuning))


def builtin_cross_section_table() -> RamanCrossSectionTable:
    """Cross-section table shipped with the package.

    A smooth spontaneous-scattering curve for a 1550 nm pump: the usual
    silica Stokes peak near 13 THz detuning with a thermally suppressed
    anti-Stokes side.  The overall scale was tuned against the network
    operating points exercised in the acceptance suite, not measured, so
    treat absolute noise magnitudes as representative rather than exact.
    """
    text = (
        resources.files("qkd_access")
        .joinpath("data", BUILTIN_TABLE_RESOURCE)
        .read_text(encoding="utf-8")
    )
    return RamanCrossSectionTable.from_csv_text(text, BUILTIN_REFERENCE_PUMP_NM)


@dataclass(frozen=True)
class RamanQuery:
    """One classical-channel contribution to the scattered power."""

    intensity_mw: float
    length_km: float
    pump_nm: float
    rx_nm: float
    rx_bandwidth_nm: float
    attenuation: AttenuationCoefficient

    def __post_init__(self):
        if self.intensity_mw < 0.0:
            raise ValueError(f"launch intensity must be >= 0, got {self.intensity_mw}")
        if self.length_km < 0.0:
            raise ValueError(f"fiber length must be >= 0, got {self.length_km}")
        if self.rx_bandwidth_nm <= 0.0:
            raise ValueError(f"receiver bandwidth must be > 0, got {self.rx_bandwidth_nm}")


def raman_forward(query: RamanQuery, table: RamanCrossSectionTable) -> float:
    """Forward-scattered power (mW) arriving with the signal."""
    alpha = query.attenuation.per_km
    gamma = table.gamma(query.pump_nm, query.rx_nm)
    return (
        query.intensity_mw
        * math.exp(-alpha * query.length_km)
        * query.length_km
        * gamma
        * query.rx_bandwidth_nm
    )


def raman_backward(query: RamanQuery, table: RamanCrossSectionTable) -> float:
    """Backward-scattered power (mW) returning against the pump.

    (1 - e^(-2 alpha L)) / (2 alpha) is evaluated through expm1 so the
    alpha -> 0 limit degrades gracefully to L.
    """
    alpha = query.attenuation.per_km
    gamma = table.gamma(query.pump_nm, query.rx_nm)
    if alpha == 0.0:
        effective_km = query.length_km
    else:
        effective_km = -math.expm1(-2.0 * alpha * query.length_km) / (2.0 * alpha)
    return query.intensity_mw * effective_km * gamma * query.rx_bandwidth_nm


def raman_photon_count(power_mw: float, rx_nm: float, gate_s: float, det_efficiency: float) -> float:
    """Average detected photons per gate for a given scattered power."""
    if min(power_mw, rx_nm, gate_s, det_efficiency) < 0.0:
        raise ValueError("raman_photon_count arguments must be >= 0")
    photon_energy_j = h * c / (rx_nm * 1e-9)
    return det_efficiency * power_mw * 1e-3 * gate_s / photon_energy_j
