# scan_sim.py
"""
scan_sim.py

Synthetic 2D lidar revolutions cast against polyline walls.

- Segment / Environment: wall geometry in the world frame
- LidarConfig: beam count, max range, start angle, radial noise, sensor pose
- ray_segment_intersect: single beam vs single wall
- cast_ranges / cast_scan: a full revolution, returned in the sensor body frame

Beams that hit nothing within max_range produce no point (they are the open
gaps at junction mouths). Radial noise comes from one seeded numpy Generator,
one draw per beam, so a seed always gives the same cloud.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from junctions.core_types import Point2, PointCloud, SensorPose
from junctions.errors import ParamError

logger = logging.getLogger(__name__)

# Parallel-ray cutoff on |cross(d, e)| / |e|
_PARALLEL_EPS = 1e-12
# Slack on the segment parameter so shared corner endpoints are hit
_ENDPOINT_EPS = 1e-12
# Distance (m) from the origin to a wall's line below which a parallel ray runs along it
_COLLINEAR_EPS = 1e-9
# Radial noise is truncated at this many standard deviations
NOISE_CLIP_SIGMAS = 4.0


# -----------------------------
# Data structures
# -----------------------------

@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ParamError(f"wall segment has zero length at ({self.a.x}, {self.a.y})")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


@dataclass(frozen=True)
class Environment:
    walls: Tuple[Segment, ...]
    name: str = "environment"

    def __post_init__(self) -> None:
        walls = tuple(self.walls)
        if not walls:
            raise ParamError(f"environment '{self.name}' has no walls")
        object.__setattr__(self, "walls", walls)

    def as_array(self) -> np.ndarray:
        """Walls as an (m, 4) array of x1, y1, x2, y2."""
        return np.array([[w.a.x, w.a.y, w.b.x, w.b.y] for w in self.walls], dtype=np.float64)


@dataclass(frozen=True)
class LidarConfig:
    num_beams: int = 360
    max_range: float = 15.0  # m
    angle_start: float = 0.0  # rad, body frame
    noise_stddev: float = 0.0  # m, radial
    sensor_pose: SensorPose = field(default_factory=SensorPose)

    def __post_init__(self) -> None:
        if int(self.num_beams) != self.num_beams or self.num_beams < 1:
            raise ParamError("num_beams must be an integer >= 1")
        if not (math.isfinite(self.max_range) and self.max_range > 0):
            raise ParamError("max_range must be positive")
        if not (math.isfinite(self.noise_stddev) and self.noise_stddev >= 0):
            raise ParamError("noise_stddev must be >= 0")
        if not math.isfinite(self.angle_start):
            raise ParamError("angle_start must be finite")

    def beam_angles(self) -> np.ndarray:
        """Body-frame beam angles start + i*2*pi/num_beams."""
        return self.angle_start + np.arange(self.num_beams) * (2.0 * math.pi / self.num_beams)


# -----------------------------
# Ray casting
# -----------------------------

def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _intersect_all(origin: np.ndarray, directions: np.ndarray, walls: np.ndarray) -> np.ndarray:
    """
    Distance along every ray to its nearest wall; +inf where nothing is hit.

    directions: (N, 2) unit vectors, walls: (M, 4).
    """
    ax = walls[:, 0] - origin[0]
    ay = walls[:, 1] - origin[1]
    ex = walls[:, 2] - walls[:, 0]
    ey = walls[:, 3] - walls[:, 1]
    elen = np.hypot(ex, ey)

    dx = directions[:, 0:1]
    dy = directions[:, 1:2]

    denom = _cross(dx, dy, ex, ey)  # (N, M)
    parallel = np.abs(denom) <= _PARALLEL_EPS * elen
    safe = np.where(parallel, 1.0, denom)

    t = _cross(ax, ay, ex, ey) / safe
    s = _cross(ax, ay, dx, dy) / safe

    hit = (~parallel) & (t >= 0.0) & (s >= -_ENDPOINT_EPS) & (s <= 1.0 + _ENDPOINT_EPS)
    t = np.where(hit, t, np.inf)

    # a ray running along a wall hits its nearer endpoint, or 0 from inside it
    dd = dx * dx + dy * dy
    collinear = parallel & (dd > 0.0) & (np.abs(_cross(ax, ay, dx, dy)) <= _COLLINEAR_EPS * np.sqrt(dd))
    if collinear.any():
        dd = np.where(dd > 0.0, dd, 1.0)
        pa = (ax * dx + ay * dy) / dd
        pb = ((ax + ex) * dx + (ay + ey) * dy) / dd
        lo, hi = np.minimum(pa, pb), np.maximum(pa, pb)
        along = np.where(lo > 0.0, lo, np.where(hi >= 0.0, 0.0, np.inf))
        t = np.where(collinear, along, t)
    return t.min(axis=1) if t.shape[1] else np.full(directions.shape[0], np.inf)


def ray_segment_intersect(origin: Point2, direction: Tuple[float, float], seg: Segment) -> Optional[float]:
    """Smallest t >= 0 with origin + t*direction on `seg`, or None."""
    d = np.asarray(direction, dtype=np.float64).reshape(1, 2)
    walls = np.array([[seg.a.x, seg.a.y, seg.b.x, seg.b.y]], dtype=np.float64)
    t = float(_intersect_all(np.array([origin.x, origin.y]), d, walls)[0])
    return None if math.isinf(t) else t


def cast_ranges(env: Environment, cfg: LidarConfig, rng_seed: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Body-frame beam angles and measured ranges for one revolution.

    Ranges are +inf for beams with no wall within max_range.
    """
    body_angles = cfg.beam_angles()
    pose = cfg.sensor_pose
    world_angles = body_angles + pose.heading
    directions = np.column_stack([np.cos(world_angles), np.sin(world_angles)])
    origin = np.array([pose.position.x, pose.position.y])

    ranges = _intersect_all(origin, directions, env.as_array())
    ranges = np.where(ranges <= cfg.max_range, ranges, np.inf)

    if cfg.noise_stddev > 0:
        rng = np.random.default_rng(rng_seed)
        noise = rng.normal(0.0, cfg.noise_stddev, size=ranges.shape[0])
        bound = NOISE_CLIP_SIGMAS * cfg.noise_stddev
        noise = np.clip(noise, -bound, bound)
        hit = np.isfinite(ranges)
        ranges = np.where(hit, np.maximum(ranges + noise, 0.0), np.inf)

    logger.debug(
        "cast %d beams against %d walls of '%s': %d returns",
        cfg.num_beams, len(env.walls), env.name, int(np.isfinite(ranges).sum()),
    )
    return body_angles, ranges


def polar_to_cloud(angles: np.ndarray, ranges: np.ndarray) -> PointCloud:
    """Drop no-returns (+inf) and convert to body-frame Cartesian points."""
    keep = np.isfinite(ranges)
    r = ranges[keep]
    a = angles[keep]
    return PointCloud.from_xy(np.column_stack([r * np.cos(a), r * np.sin(a)]))


def cast_scan(env: Environment, cfg: LidarConfig, rng_seed: int = 0) -> PointCloud:
    angles, ranges = cast_ranges(env, cfg, rng_seed)
    cloud = polar_to_cloud(angles, ranges)
    logger.info("simulated scan of '%s': %d/%d beams returned", env.name, len(cloud), cfg.num_beams)
    return cloud


# -----------------------------
# Rigid motions
# -----------------------------

def _move(p: Point2, c: float, s: float, tx: float, ty: float) -> Point2:
    return Point2(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty)


def transform_environment(env: Environment, rotation: float, translation: Tuple[float, float]) -> Environment:
    c, s = math.cos(rotation), math.sin(rotation)
    tx, ty = translation
    walls = tuple(Segment(_move(w.a, c, s, tx, ty), _move(w.b, c, s, tx, ty)) for w in env.walls)
    return Environment(walls=walls, name=env.name)


def transform_config(cfg: LidarConfig, rotation: float, translation: Tuple[float, float]) -> LidarConfig:
    """Move the sensor with the same rigid motion as transform_environment."""
    c, s = math.cos(rotation), math.sin(rotation)
    tx, ty = translation
    pose = cfg.sensor_pose
    moved = SensorPose(_move(pose.position, c, s, tx, ty), pose.heading + rotation)
    return replace(cfg, sensor_pose=moved)


def distance_to_walls(env: Environment, points: Sequence[Point2]) -> np.ndarray:
    """Shortest distance from each world-frame point to any wall segment."""
    walls = env.as_array()
    pts = np.array([[p.x, p.y] for p in points], dtype=np.float64).reshape(-1, 2)
    a = walls[None, :, 0:2]
    e = walls[None, :, 2:4] - walls[None, :, 0:2]
    w = pts[:, None, :] - a
    u = np.clip((w * e).sum(axis=2) / (e * e).sum(axis=2), 0.0, 1.0)
    closest = a + u[..., None] * e
    return np.linalg.norm(pts[:, None, :] - closest, axis=2).min(axis=1)


def body_to_world(cloud: PointCloud, pose: SensorPose) -> np.ndarray:
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    rot = np.array([[c, -s], [s, c]])
    return cloud.xy @ rot.T + np.array([pose.position.x, pose.position.y])


__all__ = [
    "Segment",
    "Environment",
    "LidarConfig",
    "ray_segment_intersect",
    "cast_ranges",
    "cast_scan",
    "polar_to_cloud",
    "transform_environment",
    "transform_config",
    "distance_to_walls",
    "body_to_world",
]
