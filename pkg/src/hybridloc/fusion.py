"""Hybrid Wi-Fi/odometry fusion with dynamic weight allocation.

Each step classifies the Wi-Fi fix against the odometry estimate, moves the
weight state machine, then blends the two positions with the new weights::

    x = x_odo * w_odo + x_wifi * w_wifi      (same for y)

The state machine has three branches:

* Wi-Fi consistent after ``epsilon`` or more consecutive outliers: Wi-Fi gets
  ``boost_weight_wifi`` and the counter resets.
* Wi-Fi consistent otherwise: equal 0.5/0.5 weights, counter resets.
* Wi-Fi outlier (or unavailable): odometry only, counter increments.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom import Point2D

ORIGIN = Point2D(0.0, 0.0)
# Lower bound on the scale used by the relative outlier test, in meters.
OUTLIER_SCALE_FLOOR_M = 1.0


class MissingWifiWithPositiveWeight(RuntimeError):
    """Fusion was asked to weight a Wi-Fi fix that does not exist."""


@dataclass(frozen=True)
class FusionConfig:
    xi: float = 0.10
    epsilon: int = 3
    boost_weight_wifi: float = 0.8
    initial_w_odo: float = 0.5
    initial_w_wifi: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.xi < 1.0:
            raise ValueError(f"xi must be in (0, 1), got {self.xi}")
        if int(self.epsilon) != self.epsilon or self.epsilon < 0:
            raise ValueError(f"epsilon must be a non-negative integer, got {self.epsilon}")
        if not 0.5 < self.boost_weight_wifi <= 1.0:
            raise ValueError(f"boost_weight_wifi must be in (0.5, 1], got {self.boost_weight_wifi}")
        if not (0.0 <= self.initial_w_odo <= 1.0 and self.initial_w_odo + self.initial_w_wifi == 1.0):
            raise ValueError("initial weights must lie in [0, 1] and sum to 1")

    def initial_state(self) -> FusionState:
        return FusionState(self.initial_w_odo, self.initial_w_wifi, 0)


@dataclass(frozen=True)
class FusionState:
    w_odo: float = 0.5
    w_wifi: float = 0.5
    odo_counter: int = 0


@dataclass(frozen=True)
class FusionStep:
    fused: Point2D
    state_after: FusionState
    wifi_was_outlier: bool


def is_outlier(
    config: FusionConfig,
    odo_est: Point2D,
    wifi_est: Point2D | None,
    origin: Point2D = ORIGIN,
) -> bool:
    """True when the Wi-Fi fix is missing or deviates from odometry by more than ``xi``.

    The deviation is measured relative to how far the odometry estimate lies
    from ``origin`` (never less than ``OUTLIER_SCALE_FLOOR_M``).
    """
    if wifi_est is None or not wifi_est.is_finite():
        return True
    scale = max(odo_est.distance_to(origin), OUTLIER_SCALE_FLOOR_M)
    return wifi_est.distance_to(odo_est) / scale > config.xi


def update_weights(config: FusionConfig, state: FusionState, outlier: bool) -> FusionState:
    if outlier:
        return FusionState(1.0, 0.0, state.odo_counter + 1)
    if state.odo_counter >= config.epsilon:
        return FusionState(1.0 - config.boost_weight_wifi, config.boost_weight_wifi, 0)
    return FusionState(0.5, 0.5, 0)


def fuse(state: FusionState, odo_est: Point2D, wifi_est: Point2D | None) -> Point2D:
    if state.w_wifi == 0.0:
        # bit-exact passthrough; the Wi-Fi fix may be absent here
        return odo_est
    if wifi_est is None:
        raise MissingWifiWithPositiveWeight(f"w_wifi={state.w_wifi} but no Wi-Fi fix")
    return Point2D(
        odo_est.x * state.w_odo + wifi_est.x * state.w_wifi,
        odo_est.y * state.w_odo + wifi_est.y * state.w_wifi,
    )


def step(
    config: FusionConfig,
    state: FusionState,
    odo_est: Point2D,
    wifi_est: Point2D | None,
    origin: Point2D = ORIGIN,
) -> FusionStep:
    """One pass of the hybrid loop: gate, reweight, then blend."""
    outlier = is_outlier(config, odo_est, wifi_est, origin)
    new_state = update_weights(config, state, outlier)
    return FusionStep(fuse(new_state, odo_est, wifi_est), new_state, outlier)
