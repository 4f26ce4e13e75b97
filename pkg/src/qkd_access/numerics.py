"""Shared special functions and unit conversions.

Everything in here is a pure scalar function used by the channel-noise and
key-rate formulas: Shannon binary entropy, the bosonic entropy function
g(x) entering Holevo bounds, the modified Bessel function I0, and dB/linear
power conversions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "AttenuationCoefficient",
    "binary_entropy",
    "holevo_g",
    "bessel_i0",
    "db_to_linear",
    "linear_to_db",
]

# x < 1 by at most this much is treated as floating-point noise in a
# symplectic eigenvalue and clamped to 1.
HOLEVO_G_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class AttenuationCoefficient:
    """Fiber attenuation in both engineering (dB/km) and natural units.

    The exponential decay laws e^(-alpha*L) need the natural-log
    coefficient; link budgets quote dB/km. Keeping both on one object
    avoids silent unit mistakes.
    """

    db_per_km: float

    def __post_init__(self):
        if not math.isfinite(self.db_per_km) or self.db_per_km < 0:
            raise ValueError(f"attenuation must be finite and >= 0, got {self.db_per_km}")

    @property
    def per_km(self) -> float:
        """Natural-log attenuation coefficient, 1/km."""
        return self.db_per_km * math.log(10.0) / 10.0


def binary_entropy(x: float) -> float:
    """Shannon binary entropy h(x) in bits, with h(0) = h(1) = 0.

    Raises ValueError if x is outside [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy argument must be in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def holevo_g(x: float) -> float:
    """Entropy of a thermal bosonic state with symplectic eigenvalue x.

    g(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), continuously
    extended with g(1) = 0.  Values of x slightly below 1 (within
    ``HOLEVO_G_CLAMP_TOL``) are clamped to 1; anything lower is rejected,
    since physical symplectic eigenvalues satisfy x >= 1.
    """
    if x < 1.0 - HOLEVO_G_CLAMP_TOL:
        raise ValueError(f"holevo_g argument must be >= 1, got {x}")
    if x <= 1.0:
        return 0.0
    up = (x + 1.0) / 2.0
    dn = (x - 1.0) / 2.0
    return up * math.log2(up) - dn * math.log2(dn)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero.

    Power series sum_k (x/2)^(2k) / (k!)^2, accumulated until the next
    term no longer changes the sum.  The arguments arising in this model
    are small (typically <= 1), where the series converges in a handful
    of terms; relative error stays below 1e-10 at least up to x = 50.
    """
    if x < 0.0:
        raise ValueError(f"bessel_i0 argument must be >= 0, got {x}")
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 200):
        term *= q / (k * k)
        new_total = total + term
        if new_total == total:
            break
        total = new_total
    return total


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio in dB to its linear equivalent, 10^(dB/10)."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Convert a positive linear power ratio to dB."""
    if value <= 0.0:
        raise ValueError(f"linear_to_db requires a positive ratio, got {value}")
    return 10.0 * math.log10(value)
