# pipeline.py
"""
pipeline.py

Junction detection from one lidar revolution:

  build_adjacency -> normalized_laplacian -> eigendecompose
  -> count_zero_eigenvalues (k) -> spectral_embed(k) -> kmeans_best_of(k)

plus scenario helpers (simulate a builtin or user environment, then detect)
and a small runtime benchmark.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from junctions.core_types import (
    EIGENVALUES_HEAD,
    DetectorParams,
    JunctionReport,
    Point2,
    PointCloud,
    WallSummary,
    validate_params,
)
from junctions.eigen import count_zero_eigenvalues, eigendecompose, spectral_embed
from junctions.errors import EigenConvergenceError, EmptyCloudError, ParamError
from junctions.graph import build_adjacency, normalized_laplacian
from junctions.kmeans import kmeans_best_of
from junctions.scan_sim import Environment, LidarConfig, cast_scan
from junctions.scenarios import builtin_scenario

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchmarkResult:
    scenario: str
    runs: Tuple[float, ...]

    @property
    def mean(self) -> float:
        return sum(self.runs) / len(self.runs)

    @property
    def min(self) -> float:
        return min(self.runs)

    @property
    def max(self) -> float:
        return max(self.runs)


# -----------------------------
# Wall summaries
# -----------------------------

def summarize_walls(cloud: PointCloud, labels: Sequence[int]) -> Tuple[WallSummary, ...]:
    """Per-cluster size, centroid, bearing and extent, sorted by bearing."""
    lab = np.asarray(labels, dtype=np.intp)
    walls: List[WallSummary] = []
    for label in np.unique(lab):
        pts = cloud.xy[lab == label]
        cx, cy = pts.mean(axis=0)
        extent = float(np.linalg.norm(pts - (cx, cy), axis=1).max())
        bearing = math.degrees(math.atan2(cy, cx)) % 360.0
        walls.append(
            WallSummary(
                label=int(label),
                size=int(pts.shape[0]),
                centroid=Point2(float(cx), float(cy)),
                bearing_deg=bearing,
                extent_m=extent,
            )
        )
    walls.sort(key=lambda w: (w.bearing_deg, w.label))
    return tuple(walls)


# -----------------------------
# Detection
# -----------------------------

def detect_junctions(cloud: PointCloud, params: Optional[DetectorParams] = None) -> JunctionReport:
    params = validate_params(params or DetectorParams())
    n = len(cloud)
    if n == 0:
        raise EmptyCloudError("cannot detect junctions in an empty point cloud")

    t0 = time.perf_counter()

    graph = build_adjacency(cloud, params.sigma, params.similarity_floor)
    laplacian = normalized_laplacian(graph)
    t_graph = time.perf_counter()

    try:
        dec = eigendecompose(laplacian, solver=params.eigen_solver, max_sweeps=params.jacobi_max_sweeps)
    except EigenConvergenceError as e:
        raise EigenConvergenceError(f"junction detection on {n} points: {e}") from e
    t_eig = time.perf_counter()

    k = count_zero_eigenvalues(dec, params.zero_eig_tol)
    embedding = spectral_embed(dec, k, row_normalize=params.row_normalize)
    assignment = kmeans_best_of(
        embedding.rows,
        k,
        restarts=params.kmeans_restarts,
        rng_seed=params.rng_seed,
        max_iter=params.kmeans_max_iter,
    )
    t_end = time.perf_counter()

    logger.debug(
        "stages: graph %.4fs, eigen %.4fs, kmeans %.4fs",
        t_graph - t0, t_eig - t_graph, t_end - t_eig,
    )

    warning = None
    if n > 1 and k == n:
        warning = (
            f"every point is its own component (k = n = {n}); "
            "the similarity floor or sigma likely disconnects the scan"
        )
        logger.warning(warning)

    labels = tuple(int(v) for v in assignment.labels)
    report = JunctionReport(
        num_junctions=k,
        labels=labels,
        eigenvalues_head=tuple(float(v) for v in dec.eigenvalues[: min(n, EIGENVALUES_HEAD)]),
        objective=float(assignment.objective),
        runtime=t_end - t0,
        params=params,
        quality_warning=warning,
        walls=summarize_walls(cloud, labels),
    )
    logger.info("detected %d junction(s) in %d points (%.3fs)", k, n, report.runtime)
    return report


def detect_on_environment(
    env: Environment,
    cfg: Optional[LidarConfig] = None,
    params: Optional[DetectorParams] = None,
    seed: int = 0,
) -> Tuple[JunctionReport, PointCloud]:
    cloud = cast_scan(env, cfg or LidarConfig(), rng_seed=seed)
    return detect_junctions(cloud, params), cloud


def detect_on_scenario(
    name: str,
    params: Optional[DetectorParams] = None,
    seed: int = 0,
    cfg: Optional[LidarConfig] = None,
) -> Tuple[JunctionReport, int]:
    """Simulate a builtin scenario, detect, and return the report with the ground truth."""
    env, expected = builtin_scenario(name)
    report, _ = detect_on_environment(env, cfg, params, seed)
    if report.num_junctions != expected:
        logger.info("scenario '%s' seed %d: detected %d, expected %d", name, seed, report.num_junctions, expected)
    return report, expected


def benchmark(name: str, repeat: int = 10, params: Optional[DetectorParams] = None, seed: int = 0) -> BenchmarkResult:
    if repeat < 1:
        raise ParamError("repeat must be >= 1")
    env, _ = builtin_scenario(name)
    cloud = cast_scan(env, LidarConfig(), rng_seed=seed)
    params = params or DetectorParams()
    runs = tuple(detect_junctions(cloud, params).runtime for _ in range(repeat))
    return BenchmarkResult(scenario=env.name, runs=runs)


__all__ = [
    "BenchmarkResult",
    "summarize_walls",
    "detect_junctions",
    "detect_on_environment",
    "detect_on_scenario",
    "benchmark",
]
