"""Seeded Monte-Carlo harness running Wi-Fi, odometry and fused estimators in lockstep."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from . import fusion
from .channel import ChannelParams, RssiSample, distance_from_rssi, rssi_at, sample_shadowing
from .fusion import FusionConfig
from .geom import AnchorSet, DegenerateGeometry, DistanceTriple, Point2D, trilaterate
from .odometry import (
    OdometryCalibration,
    OdometryNoiseParams,
    Pose2D,
    dead_reckon_step,
    simulate_encoder_noise,
    ticks_for_move,
)


class InvalidScenario(ValueError):
    pass


class EmptyRun(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    name: str
    anchors: AnchorSet
    channel: ChannelParams
    waypoints: tuple[Point2D, ...]
    start_pose: Pose2D
    odo_noise: OdometryNoiseParams = OdometryNoiseParams()
    calibration: OdometryCalibration = OdometryCalibration()
    fusion: FusionConfig = FusionConfig()
    seed: int = 0
    rssi_samples_per_reading: int = 1
    recalibrate_odometry: bool = True

    def validate(self) -> None:
        try:
            self.anchors.validate()
        except DegenerateGeometry as exc:
            raise InvalidScenario(f"{self.name}: {exc}") from exc
        if len(self.waypoints) < 2:
            raise InvalidScenario(f"{self.name}: need at least 2 waypoints, got {len(self.waypoints)}")
        if int(self.rssi_samples_per_reading) != self.rssi_samples_per_reading or self.rssi_samples_per_reading < 1:
            raise InvalidScenario("rssi_samples_per_reading must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise InvalidScenario(f"seed must fit in 64 unsigned bits, got {self.seed}")
        for i, wp in enumerate(self.waypoints):
            if not wp.is_finite():
                raise InvalidScenario(f"waypoint {i} is not finite")
            for label, anchor in zip("ABC", self.anchors):
                if wp.distance_to(anchor) < self.channel.d0:
                    raise InvalidScenario(
                        f"waypoint {i} ({wp.x}, {wp.y}) is closer than d0={self.channel.d0} m to anchor {label}"
                    )

    def replace(self, **changes) -> Scenario:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    truth: Point2D
    est_wifi: Point2D | None
    est_odo: Point2D
    est_fused: Point2D
    err_wifi: float | None
    err_odo: float
    err_fused: float
    wifi_was_outlier: bool
    weights: fusion.FusionState = field(default_factory=fusion.FusionState, compare=False)


@dataclass(frozen=True)
class MethodStats:
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class RunSummary:
    wifi: MethodStats | None
    odo: MethodStats
    fused: MethodStats
    trial_count: int
    outlier_rate: float


def _stats(values: list[float]) -> MethodStats:
    arr = np.asarray(values, dtype=float)
    return MethodStats(float(arr.mean()), float(arr.min()), float(arr.max()))


def summarize(records: list[TrialRecord]) -> RunSummary:
    if not records:
        raise EmptyRun("cannot summarize an empty run")
    wifi = [r.err_wifi for r in records if r.err_wifi is not None]
    return RunSummary(
        wifi=_stats(wifi) if wifi else None,
        odo=_stats([r.err_odo for r in records]),
        fused=_stats([r.err_fused for r in records]),
        trial_count=len(records),
        outlier_rate=sum(r.wifi_was_outlier for r in records) / len(records),
    )


def wifi_fix(
    scenario: Scenario, truth: Point2D, rng: np.random.Generator
) -> Point2D | None:
    """Synthesize one RSSI reading per anchor at ``truth`` and trilaterate it.

    Returns None when the anchors are degenerate for the closed form.
    """
    ch = scenario.channel
    dists = []
    for anchor_id, anchor in enumerate(scenario.anchors):
        # executed positions can sit a tick inside d0 of an anchor; hold them at the model edge
        d = max(truth.distance_to(anchor), ch.d0)
        readings = [
            rssi_at(ch, d, sample_shadowing(ch, rng)) for _ in range(scenario.rssi_samples_per_reading)
        ]
        rssi = math.fsum(readings) / len(readings)
        dists.append(distance_from_rssi(ch, RssiSample(rssi, anchor_id)))
    try:
        return trilaterate(scenario.anchors, DistanceTriple(*dists))
    except DegenerateGeometry:
        return None


def run_scenario(scenario: Scenario) -> tuple[list[TrialRecord], RunSummary]:
    """Drive the robot through every waypoint and score each estimator against truth.

    Ground truth is where the integer wheel commands actually take the robot,
    so it differs from the nominal waypoint by the encoder's turn and
    distance resolution.

    Two dead-reckoning chains consume the same noisy ticks. The reported
    ``est_odo`` is the odometry-only baseline and never sees Wi-Fi. The chain
    feeding the fusion step is re-anchored to each fused position when
    ``recalibrate_odometry`` is set; otherwise it coincides with the baseline.
    Fusion yields no heading, so heading is never re-anchored.
    """
    scenario.validate()
    rng = np.random.default_rng(scenario.seed)
    cal = scenario.calibration

    truth_pose = scenario.start_pose
    odo_pose = scenario.start_pose
    tracked_pose = scenario.start_pose
    state = scenario.fusion.initial_state()
    records = []

    for index, waypoint in enumerate(scenario.waypoints):
        for ticks in ticks_for_move(truth_pose, waypoint, cal):
            truth_pose = dead_reckon_step(truth_pose, ticks, cal)
            noisy = simulate_encoder_noise(ticks, scenario.odo_noise, rng)
            odo_pose = dead_reckon_step(odo_pose, noisy, cal)
            tracked_pose = dead_reckon_step(tracked_pose, noisy, cal)

        truth = truth_pose.position
        est_wifi = wifi_fix(scenario, truth, rng)
        result = fusion.step(scenario.fusion, state, tracked_pose.position, est_wifi)
        state = result.state_after
        if scenario.recalibrate_odometry:
            tracked_pose = Pose2D(result.fused, tracked_pose.heading)

        est_odo = odo_pose.position
        records.append(
            TrialRecord(
                trial_index=index + 1,
                truth=truth,
                est_wifi=est_wifi,
                est_odo=est_odo,
                est_fused=result.fused,
                err_wifi=None if est_wifi is None else est_wifi.distance_to(truth),
                err_odo=est_odo.distance_to(truth),
                err_fused=result.fused.distance_to(truth),
                wifi_was_outlier=result.wifi_was_outlier,
                weights=state,
            )
        )
    return records, summarize(records)
