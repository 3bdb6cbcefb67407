# graph.py
"""
graph.py

RBF similarity graph over a point cloud and its normalized Laplacian.

W(i,j) = exp(-sigma * |x_i - x_j|^2), zeroed below `floor` (self-similarity is
always 1), and L = I - D^-1/2 W D^-1/2 with D the row sums of W.

Without the floor W is strictly positive, the graph is always connected and the
zero-eigenvalue count is always 1; the floor is what lets far-apart walls fall
into separate components.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from junctions.core_types import PointCloud
from junctions.errors import EmptyCloudError, ParamError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SimilarityGraph:
    weights: np.ndarray  # (n, n), symmetric, entries in [0, 1], unit diagonal
    degrees: np.ndarray  # (n,), row sums of weights

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])


@dataclass(frozen=True, eq=False)
class LaplacianMatrix:
    entries: np.ndarray

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def squared_distances(cloud: PointCloud) -> np.ndarray:
    """Pairwise squared distances from coordinate differences (rigid-motion stable)."""
    if len(cloud) == 1:
        return np.zeros((1, 1))
    return squareform(pdist(cloud.xy, metric="sqeuclidean"))


def build_adjacency(cloud: PointCloud, sigma: float, floor: float) -> SimilarityGraph:
    n = len(cloud)
    if n == 0:
        raise EmptyCloudError("cannot build a similarity graph from an empty point cloud")
    if not sigma > 0:
        raise ParamError("sigma must be positive")
    if not 0.0 <= floor < 1.0:
        raise ParamError("similarity_floor must lie in [0, 1)")

    weights = np.exp(-sigma * squared_distances(cloud))
    weights[weights < floor] = 0.0
    np.fill_diagonal(weights, 1.0)
    degrees = weights.sum(axis=1)

    logger.debug(
        "adjacency n=%d sigma=%g floor=%g nonzero=%d",
        n, sigma, floor, int(np.count_nonzero(weights)),
    )
    return SimilarityGraph(weights=_readonly(weights), degrees=_readonly(degrees))


def normalized_laplacian(graph: SimilarityGraph) -> LaplacianMatrix:
    inv_sqrt = 1.0 / np.sqrt(graph.degrees)
    scaled = graph.weights * inv_sqrt[:, None] * inv_sqrt[None, :]
    entries = np.eye(graph.n) - scaled
    # exact symmetry; the products above can differ in the last bit
    entries = 0.5 * (entries + entries.T)
    return LaplacianMatrix(entries=_readonly(entries))


__all__ = [
    "SimilarityGraph",
    "LaplacianMatrix",
    "squared_distances",
    "build_adjacency",
    "normalized_laplacian",
]
