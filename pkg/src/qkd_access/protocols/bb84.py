"""Decoy-state BB84 key rate for a lossy, background-noise-limited link.

The channel is summarised by two numbers: total transmissivity ``eta`` and
background-plus-dark count probability per detector per pulse ``noise``.
With a signal intensity mu the observable gain/error quantities are

    Q_mu = 1 - exp(-eta*mu) (1-noise)^2
    E_mu = [Q_mu/2 - (1/2 - e_d)(1 - exp(-eta*mu))(1-noise)] / Q_mu
    Y_1  = 1 - (1-eta)(1-noise)^2
    Q_1  = Y_1 mu exp(-mu)
    e_1  = [Y_1/2 - (1/2 - e_d) eta (1-noise)] / Y_1

and the asymptotic secret fraction (decoy estimation taken as exact) is

    R = q { -Q_mu f h(E_mu) + Q_1 [1 - h(e_1)] },

clamped at zero, since a negative lower bound simply means no key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..budget import LinkBudget
from ..numerics import binary_entropy

__all__ = [
    "Bb84Params",
    "Bb84Gains",
    "gain_and_qber",
    "ds_bb84_rate",
    "ds_bb84_rate_at",
    "spp_bb84_rate",
    "spp_bb84_rate_at",
    "max_tolerable_noise",
    "max_tolerable_loss",
]

# Error probability of a background click: a noise photon carries no bit
# correlation, so it lands on the wrong detector half the time.
ERRONEOUS_CLICK_ERROR = 0.5

BISECTION_REL_TOL = 1e-6


@dataclass(frozen=True)
class Bb84Params:
    """Source and post-processing parameters for (decoy-state) BB84."""

    mu: float = 0.5  # mean photons per signal pulse
    sift_factor: float = 1.0  # q; ~1 for the efficient protocol variant
    ec_inefficiency: float = 1.16  # f >= 1
    misalignment: float = 0.033  # e_d, relative-phase error probability

    def __post_init__(self):
        if self.mu <= 0.0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not 0.0 < self.sift_factor <= 1.0:
            raise ValueError(f"sift factor must be in (0, 1], got {self.sift_factor}")
        if self.ec_inefficiency < 1.0:
            raise ValueError(f"error-correction inefficiency must be >= 1, got {self.ec_inefficiency}")
        if not 0.0 <= self.misalignment < 0.5:
            raise ValueError(f"misalignment must be in [0, 0.5), got {self.misalignment}")


@dataclass(frozen=True)
class Bb84Gains:
    """Observable gains and error rates entering the rate formula."""

    gain: float  # Q_mu
    qber: float  # E_mu
    single_photon_gain: float  # Q_1
    single_photon_error: float  # e_1
    single_photon_yield: float  # Y_1


def _check_channel(eta: float, noise: float):
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must be in [0, 1], got {eta}")
    if not 0.0 <= noise < 1.0:
        raise ValueError(f"noise per detector must be in [0, 1), got {noise}")


def gain_and_qber(eta: float, noise: float, params: Bb84Params) -> Bb84Gains:
    """Gain, QBER and single-photon statistics for a given channel."""
    _check_channel(eta, noise)
    e0, ed = ERRONEOUS_CLICK_ERROR, params.misalignment
    quiet = (1.0 - noise) ** 2
    signal = -math.expm1(-eta * params.mu)  # 1 - exp(-eta mu)

    gain = 1.0 - (1.0 - signal) * quiet
    if gain > 0.0:
        qber = (e0 * gain - (e0 - ed) * signal * (1.0 - noise)) / gain
    else:
        qber = 0.0

    yield_1 = 1.0 - (1.0 - eta) * quiet
    gain_1 = yield_1 * params.mu * math.exp(-params.mu)
    if yield_1 > 0.0:
        error_1 = (e0 * yield_1 - (e0 - ed) * eta * (1.0 - noise)) / yield_1
    else:
        error_1 = 0.0
    return Bb84Gains(gain, qber, gain_1, error_1, yield_1)


def ds_bb84_rate_at(eta: float, noise: float, params: Bb84Params) -> float:
    """Decoy-state BB84 key rate per pulse for explicit channel numbers."""
    g = gain_and_qber(eta, noise, params)
    rate = params.sift_factor * (
        -g.gain * params.ec_inefficiency * binary_entropy(g.qber)
        + g.single_photon_gain * (1.0 - binary_entropy(g.single_photon_error))
    )
    return max(0.0, rate)


def ds_bb84_rate(link: LinkBudget, params: Bb84Params) -> float:
    """Decoy-state BB84 key rate per pulse for a link budget."""
    return ds_bb84_rate_at(link.transmissivity, link.noise_per_detector, params)


def spp_bb84_rate_at(eta: float, noise: float, params: Bb84Params) -> float:
    """BB84 key rate per pulse with an ideal single-photon source.

    Every pulse is a single photon, so the gain is the single-photon yield
    and both the privacy term and the error correction run on e_1.
    """
    g = gain_and_qber(eta, noise, params)
    h1 = binary_entropy(g.single_photon_error)
    rate = params.sift_factor * g.single_photon_yield * (
        1.0 - h1 - params.ec_inefficiency * h1
    )
    return max(0.0, rate)


def spp_bb84_rate(link: LinkBudget, params: Bb84Params) -> float:
    return spp_bb84_rate_at(link.transmissivity, link.noise_per_detector, params)


def _bisect_boundary(predicate, lo: float, hi: float) -> float:
    """Largest x in [lo, hi] with predicate(x) true, given a true->false transition."""
    while (hi - lo) > BISECTION_REL_TOL * max(hi, 1e-30):
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo


def max_tolerable_noise(eta: float, params: Bb84Params, rate_fn=ds_bb84_rate_at) -> float:
    """Largest per-detector noise at which the rate stays positive.

    Returns 0.0 when the channel yields no key even without background, and
    ``math.inf`` if the rate somehow never dies in the searchable range
    (cannot happen for the standard formulas, but the caller gets an
    explicit marker instead of a silent wrong number).
    """
    if rate_fn(eta, 0.0, params) <= 0.0:
        return 0.0
    hi = 0.5
    if rate_fn(eta, hi, params) > 0.0:
        return math.inf
    return _bisect_boundary(lambda n: rate_fn(eta, n, params) > 0.0, 0.0, hi)


def max_tolerable_loss(noise: float, params: Bb84Params, rate_fn=ds_bb84_rate_at) -> float:
    """Smallest transmissivity at which the rate stays positive.

    Returns ``math.inf`` when no transmissivity gives a key at this noise
    level (marker for "loss budget empty").
    """
    if rate_fn(1.0, noise, params) <= 0.0:
        return math.inf
    if noise == 0.0:
        return 0.0  # any positive transmissivity already yields key
    # Predicate is true (positive rate) at high eta, false at low eta.
    lo, hi = 0.0, 1.0
    while (hi - lo) > BISECTION_REL_TOL * max(hi, 1e-30):
        mid = 0.5 * (lo + hi)
        if rate_fn(mid, noise, params) > 0.0:
            hi = mid
        else:
            lo = mid
    return hi
