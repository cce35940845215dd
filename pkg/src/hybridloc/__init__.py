"""Hybrid indoor localization: Wi-Fi trilateration fused with wheel odometry."""

from .channel import ChannelParams, distance_from_rssi, path_loss, reference_path_loss
from .fusion import FusionConfig, FusionState, step
from .geom import AnchorSet, DegenerateGeometry, DistanceTriple, Point2D, trilaterate
from .odometry import OdometryCalibration, OdometryNoiseParams, Pose2D, WheelTicks, dead_reckon_step
from .sim import Scenario, TrialRecord, run_scenario, summarize

__all__ = [
    "AnchorSet",
    "ChannelParams",
    "DegenerateGeometry",
    "DistanceTriple",
    "FusionConfig",
    "FusionState",
    "OdometryCalibration",
    "OdometryNoiseParams",
    "Point2D",
    "Pose2D",
    "Scenario",
    "TrialRecord",
    "WheelTicks",
    "dead_reckon_step",
    "distance_from_rssi",
    "path_loss",
    "reference_path_loss",
    "run_scenario",
    "step",
    "summarize",
    "trilaterate",
]
