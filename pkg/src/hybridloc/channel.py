"""Close-in free-space reference distance path-loss model.

Forward model::

    PL(d) = PL(d0) + 10 n log10(d / d0) + X_sigma,      d >= d0
    PL(d0) = 20 log10(4 pi d0 / lambda)

where ``X_sigma`` is zero-mean Gaussian shadowing in dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


class OutOfModelRange(ValueError):
    """Distance below the reference distance, where the model does not apply."""


@dataclass(frozen=True)
class ChannelParams:
    n: float
    sigma: float
    d0: float = 1.0
    freq_hz: float = 2.4e9
    tx_power_dbm: float = 20.0

    def __post_init__(self):
        if not self.n > 0:
            raise ValueError(f"path-loss exponent must be > 0, got {self.n}")
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not self.d0 > 0:
            raise ValueError(f"d0 must be > 0, got {self.d0}")
        if not self.freq_hz > 0:
            raise ValueError(f"freq_hz must be > 0, got {self.freq_hz}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.freq_hz


@dataclass(frozen=True)
class RssiSample:
    rssi_dbm: float
    anchor_id: int  # 0, 1, 2 for A, B, C


def reference_path_loss(params: ChannelParams) -> float:
    """Free-space loss at the reference distance, in dB."""
    return 20.0 * math.log10(4.0 * math.pi * params.d0 / params.wavelength)


def path_loss(params: ChannelParams, d: float, shadowing_db: float = 0.0) -> float:
    if d < params.d0:
        raise OutOfModelRange(f"d={d} m is below the reference distance d0={params.d0} m")
    if not math.isfinite(shadowing_db):
        raise ValueError("shadowing must be finite")
    return reference_path_loss(params) + 10.0 * params.n * math.log10(d / params.d0) + shadowing_db


def sample_shadowing(params: ChannelParams, rng: np.random.Generator) -> float:
    # one draw per call regardless of sigma, so random streams stay aligned across sigma values
    return float(params.sigma * rng.standard_normal())


def rssi_at(params: ChannelParams, d: float, shadowing_db: float = 0.0) -> float:
    """Received power (dBm) at distance ``d``."""
    return params.tx_power_dbm - path_loss(params, d, shadowing_db)


def distance_from_rssi(params: ChannelParams, sample: RssiSample) -> float:
    """Invert the zero-shadowing model; readings stronger than PL(d0) clamp to d0."""
    excess = (params.tx_power_dbm - sample.rssi_dbm) - reference_path_loss(params)
    if excess <= 0.0:
        return params.d0
    return params.d0 * 10.0 ** (excess / (10.0 * params.n))
