"""Wheel-tick dead reckoning for a skid-steer base.

The four wheels are reduced to left/right side aggregates, and each reading
interval is integrated with the midpoint-heading arc approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import Point2D

TICK_SANITY_CAP = 10**9


def normalize_angle(theta: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.remainder(theta, 2.0 * math.pi)  # [-pi, pi]
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


@dataclass(frozen=True)
class Pose2D:
    position: Point2D
    heading: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "heading", normalize_angle(self.heading))


@dataclass(frozen=True)
class WheelTicks:
    left: int
    right: int

    def __post_init__(self):
        for side in (self.left, self.right):
            if abs(side) >= TICK_SANITY_CAP:
                raise ValueError(f"tick count {side} exceeds sanity cap")


@dataclass(frozen=True)
class OdometryCalibration:
    meters_per_tick: float = 0.0102
    slope: float = 1.0
    intercept: float = 0.0
    wheelbase: float = 0.5

    def __post_init__(self):
        if not self.meters_per_tick > 0:
            raise ValueError("meters_per_tick must be > 0")
        if not self.wheelbase > 0:
            raise ValueError("wheelbase must be > 0")
        if not self.slope > 0:
            raise ValueError("slope must be > 0")


@dataclass(frozen=True)
class OdometryNoiseParams:
    tick_error_rate: float = 0.0

    def __post_init__(self):
        if not self.tick_error_rate >= 0:
            raise ValueError("tick_error_rate must be >= 0")


def apply_calibration(cal: OdometryCalibration, raw_distance: float) -> float:
    """Map encoder-reported distance to travelled distance (linear trend line)."""
    return cal.slope * raw_distance + cal.intercept


def dead_reckon_step(pose: Pose2D, ticks: WheelTicks, cal: OdometryCalibration) -> Pose2D:
    d_left = apply_calibration(cal, ticks.left * cal.meters_per_tick)
    d_right = apply_calibration(cal, ticks.right * cal.meters_per_tick)
    dtheta = (d_right - d_left) / cal.wheelbase
    dist = (d_left + d_right) / 2.0
    mid = pose.heading + dtheta / 2.0
    p = pose.position
    return Pose2D(
        Point2D(p.x + dist * math.cos(mid), p.y + dist * math.sin(mid)),
        pose.heading + dtheta,
    )


def simulate_encoder_noise(
    true_ticks: WheelTicks, drift: OdometryNoiseParams, rng: np.random.Generator
) -> WheelTicks:
    """Perturb each side independently: round(true * (1 + eps)), eps ~ N(0, rate^2)."""
    eps = drift.tick_error_rate * rng.standard_normal(2)
    # round() on a Python float is round-half-even
    return WheelTicks(
        round(true_ticks.left * (1.0 + float(eps[0]))),
        round(true_ticks.right * (1.0 + float(eps[1]))),
    )


def ticks_for_move(pose: Pose2D, target: Point2D, cal: OdometryCalibration) -> tuple[WheelTicks, WheelTicks]:
    """Encoder commands for turn-in-place toward ``target`` followed by a straight run.

    Counts are rounded to whole ticks, so executing them lands within one tick
    resolution of ``target`` rather than exactly on it.
    """
    dx, dy = target.x - pose.position.x, target.y - pose.position.y
    dist = math.hypot(dx, dy)
    turn = normalize_angle(math.atan2(dy, dx) - pose.heading) if dist > 0 else 0.0
    per_side = turn * cal.wheelbase / (2.0 * cal.slope * cal.meters_per_tick)
    k = round(per_side)
    straight = round(max(dist - cal.intercept, 0.0) / (cal.slope * cal.meters_per_tick))
    return WheelTicks(-k, k), WheelTicks(straight, straight)
