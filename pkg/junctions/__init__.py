"""
junctions

Tunnel junction detection from a single 2D lidar revolution: wall points are
grouped by spectral clustering and the number of groups is the number of
junctions (branches) around the sensor.
"""

from junctions.core_types import (
    DetectorParams,
    JunctionReport,
    Point2,
    PointCloud,
    SensorPose,
    WallSummary,
    validate_params,
)
from junctions.errors import (
    CloudFormatError,
    EigenConvergenceError,
    EmptyCloudError,
    EmptyFileError,
    JunctionError,
    OracleSizeError,
    ParamError,
    UnknownScenarioError,
)
from junctions.pipeline import benchmark, detect_junctions, detect_on_environment, detect_on_scenario
from junctions.scan_sim import Environment, LidarConfig, Segment, cast_scan
from junctions.scenarios import builtin_scenario, list_scenarios

__version__ = "0.1.0"

__all__ = [
    "DetectorParams",
    "JunctionReport",
    "Point2",
    "PointCloud",
    "SensorPose",
    "WallSummary",
    "validate_params",
    "CloudFormatError",
    "EigenConvergenceError",
    "EmptyCloudError",
    "EmptyFileError",
    "JunctionError",
    "OracleSizeError",
    "ParamError",
    "UnknownScenarioError",
    "benchmark",
    "detect_junctions",
    "detect_on_environment",
    "detect_on_scenario",
    "Environment",
    "LidarConfig",
    "Segment",
    "cast_scan",
    "builtin_scenario",
    "list_scenarios",
]
