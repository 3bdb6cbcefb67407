# core_types.py
"""
core_types.py

Shared value objects for junction detection:

- Point2 / SensorPose: body-frame geometry
- PointCloud: one lidar revolution, points identified by their input index
- DetectorParams: every knob of the detector, with validation
  (collect_param_issues -> list of ParamIssue, validate_params -> raises ParamError)
- WallSummary / JunctionReport: what a detection returns

All types are frozen after construction. PointCloud keeps its coordinates in a
read-only numpy array so it can be shared between readers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from junctions.errors import ParamError

# -----------------------------
# Types / constants
# -----------------------------

EIGEN_SOLVERS: Tuple[str, ...] = ("lapack", "jacobi")

EIGENVALUES_HEAD = 10


# -----------------------------
# Geometry
# -----------------------------

@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ParamError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class SensorPose:
    position: Point2 = Point2(0.0, 0.0)
    heading: float = 0.0  # radians, world frame

    def __post_init__(self) -> None:
        if not math.isfinite(self.heading):
            raise ParamError("heading must be finite")


@dataclass(frozen=True, eq=False)
class PointCloud:
    """
    Ordered 2D points in the sensor body frame.

    Row i of `xy` is point x_i; labels produced downstream index into it.
    Duplicate points are allowed.
    """

    xy: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.xy, dtype=np.float64, copy=True)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ParamError(f"point cloud must have shape (n, 2), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr).all(axis=1))[0])
            raise ParamError(f"point {bad} has a non-finite coordinate")
        arr.setflags(write=False)
        object.__setattr__(self, "xy", arr)

    @classmethod
    def from_xy(cls, xy) -> "PointCloud":
        """From any (n, 2) array-like of x, y in metres."""
        return cls(np.asarray(xy, dtype=np.float64))

    @classmethod
    def from_points(cls, points: Iterable[Point2]) -> "PointCloud":
        return cls(np.array([[p.x, p.y] for p in points], dtype=np.float64).reshape(-1, 2))

    @classmethod
    def empty(cls) -> "PointCloud":
        return cls(np.zeros((0, 2)))

    def __len__(self) -> int:
        return int(self.xy.shape[0])

    @property
    def points(self) -> Iterator[Point2]:
        for x, y in self.xy:
            yield Point2(float(x), float(y))

    def transformed(self, rotation: float, translation: Tuple[float, float] = (0.0, 0.0)) -> "PointCloud":
        """Rotate by `rotation` radians about the origin, then translate."""
        c, s = math.cos(rotation), math.sin(rotation)
        rot = np.array([[c, -s], [s, c]])
        return PointCloud(self.xy @ rot.T + np.asarray(translation, dtype=np.float64))

    def permuted(self, order: Sequence[int]) -> "PointCloud":
        return PointCloud(self.xy[np.asarray(order, dtype=np.intp)])


# -----------------------------
# Detector parameters
# -----------------------------

@dataclass(frozen=True)
class DetectorParams:
    sigma: float = 1.5  # 1/m^2, RBF decay
    similarity_floor: float = 1e-8
    zero_eig_tol: float = 1e-8
    kmeans_max_iter: int = 100
    kmeans_restarts: int = 10
    rng_seed: int = 0
    row_normalize: bool = True
    eigen_solver: str = "lapack"
    jacobi_max_sweeps: int = 50


@dataclass
class ParamIssue:
    field: str
    message: str
    hint: str = ""


def _is_int(v: object) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


def collect_param_issues(params: DetectorParams) -> List[ParamIssue]:
    issues: List[ParamIssue] = []

    if not (math.isfinite(params.sigma) and params.sigma > 0):
        issues.append(ParamIssue("sigma", "sigma must be positive", "The default is 1.5 per m^2."))

    floor = params.similarity_floor
    if not (math.isfinite(floor) and 0.0 <= floor < 1.0):
        issues.append(
            ParamIssue(
                "similarity_floor",
                "similarity_floor must lie in [0, 1)",
                "Use 0 to keep every similarity, 1e-8 to disconnect walls more than ~3.5 m apart.",
            )
        )

    if not (math.isfinite(params.zero_eig_tol) and params.zero_eig_tol > 0):
        issues.append(ParamIssue("zero_eig_tol", "zero_eig_tol must be positive"))

    if not _is_int(params.kmeans_max_iter) or params.kmeans_max_iter < 1:
        issues.append(ParamIssue("kmeans_max_iter", "kmeans_max_iter must be an integer >= 1"))

    if not _is_int(params.kmeans_restarts) or params.kmeans_restarts < 1:
        issues.append(ParamIssue("kmeans_restarts", "kmeans_restarts must be an integer >= 1"))

    if not _is_int(params.rng_seed) or not (0 <= params.rng_seed < 2**64):
        issues.append(ParamIssue("rng_seed", "rng_seed must be an unsigned 64-bit integer"))

    if params.eigen_solver not in EIGEN_SOLVERS:
        issues.append(
            ParamIssue(
                "eigen_solver",
                f"eigen_solver must be one of {', '.join(EIGEN_SOLVERS)}",
            )
        )

    if not _is_int(params.jacobi_max_sweeps) or params.jacobi_max_sweeps < 1:
        issues.append(ParamIssue("jacobi_max_sweeps", "jacobi_max_sweeps must be an integer >= 1"))

    return issues


def validate_params(params: DetectorParams) -> DetectorParams:
    """Return `params` unchanged, or raise ParamError naming every bad field."""
    issues = collect_param_issues(params)
    if issues:
        msg = "; ".join(f"{i.field}: {i.message}" for i in issues)
        raise ParamError(msg)
    return params


# -----------------------------
# Results
# -----------------------------

@dataclass(frozen=True)
class WallSummary:
    label: int
    size: int
    centroid: Point2
    bearing_deg: float
    extent_m: float


@dataclass(frozen=True)
class JunctionReport:
    num_junctions: int
    labels: Tuple[int, ...]
    eigenvalues_head: Tuple[float, ...]
    objective: float
    runtime: float  # seconds, wall clock of the whole detection
    params: DetectorParams = field(default_factory=DetectorParams)
    quality_warning: Optional[str] = None
    walls: Tuple[WallSummary, ...] = ()

    def __post_init__(self) -> None:
        if self.labels and self.num_junctions < 1:
            raise ParamError("num_junctions must be >= 1 for a non-empty cloud")
        if any(not (0 <= lab < self.num_junctions) for lab in self.labels):
            raise ParamError("every label must be in [0, num_junctions)")

    @property
    def num_points(self) -> int:
        return len(self.labels)


__all__ = [
    "EIGEN_SOLVERS",
    "EIGENVALUES_HEAD",
    "Point2",
    "SensorPose",
    "PointCloud",
    "DetectorParams",
    "ParamIssue",
    "collect_param_issues",
    "validate_params",
    "WallSummary",
    "JunctionReport",
]
