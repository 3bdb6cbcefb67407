# kmeans.py
"""
kmeans.py

K-means over spectral embedding rows:

- kmeans_pp_seed: D^2-weighted seeding
- lloyd: assignment / mean update until the labels stop changing
- kmeans_best_of: several seeded restarts, lowest objective wins
- exhaustive_kmeans_oracle: exact optimum for tiny instances (tests only)

Randomness always flows from an explicit seed. Restart streams come from
numpy.random.SeedSequence(seed).spawn(restarts), so a (rows, k, seed) triple
always gives the same assignment.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist

from junctions.errors import OracleSizeError, ParamError

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]

ORACLE_MAX_POINTS = 10
ORACLE_MAX_CLUSTERS = 3


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    labels: np.ndarray  # (n,), ints in [0, k)
    centroids: np.ndarray  # (k, d)
    objective: float
    iterations: int
    history: Tuple[float, ...] = ()  # objective after each Lloyd iteration

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])


# -----------------------------
# Small utilities
# -----------------------------

def _as_rows(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ParamError(f"rows must be a 2D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParamError("rows must be finite")
    return arr


def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ParamError(f"k={k} must lie in [1, {n}]")


def _sq_dists(rows: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return cdist(rows, centroids, "sqeuclidean")


def _objective(rows: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    diff = rows - centroids[labels]
    return float(np.einsum("nd,nd->", diff, diff))


def _means(rows: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    out = centroids.copy()
    for j in range(centroids.shape[0]):
        members = labels == j
        if members.any():
            out[j] = rows[members].mean(axis=0)
    return out


# -----------------------------
# Seeding
# -----------------------------

def kmeans_pp_seed(rows, k: int, rng_seed: SeedLike = 0) -> np.ndarray:
    """
    K-means++ initial centroids.

    The first centroid is a uniform row; each next one is drawn with
    probability proportional to the squared distance to the nearest centroid
    chosen so far. When every remaining weight is zero (duplicate rows) the
    draw is uniform over the rows not chosen yet.
    """
    x = _as_rows(rows)
    n = x.shape[0]
    _check_k(k, n)
    rng = np.random.default_rng(rng_seed)

    chosen: List[int] = [int(rng.integers(n))]
    d2 = _sq_dists(x, x[chosen[0]][None, :])[:, 0]

    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            remaining = np.setdiff1d(np.arange(n), chosen)
            idx = int(rng.choice(remaining))
        chosen.append(idx)
        d2 = np.minimum(d2, _sq_dists(x, x[idx][None, :])[:, 0])

    return x[chosen].copy()


# -----------------------------
# Lloyd iteration
# -----------------------------

def _assign(rows: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # argmin returns the first minimum: ties go to the lowest centroid index
    return np.argmin(_sq_dists(rows, centroids), axis=1)


def _repair_empty(rows: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> int:
    """Give each empty cluster the point farthest from its centroid. Returns repairs made."""
    k = centroids.shape[0]
    repaired = 0
    for j in range(k):
        counts = np.bincount(labels, minlength=k)
        if counts[j] > 0:
            continue
        own = np.einsum("nd,nd->n", rows - centroids[labels], rows - centroids[labels])
        donors = counts[labels] > 1
        if not donors.any():
            break
        own = np.where(donors, own, -1.0)
        far = int(np.argmax(own))
        labels[far] = j
        centroids[j] = rows[far]
        repaired += 1
    if repaired:
        logger.warning("k-means: re-seeded %d empty cluster(s)", repaired)
    return repaired


def lloyd(rows, init, max_iter: int = 100) -> ClusterAssignment:
    """
    Lloyd's algorithm from the given centroids.

    Stops at the first iteration whose labels equal the previous ones, or after
    `max_iter` iterations. The objective never increases between iterations.
    """
    x = _as_rows(rows)
    centroids = _as_rows(init).copy()
    if centroids.shape[1] != x.shape[1]:
        raise ParamError("centroids and rows differ in dimension")
    _check_k(centroids.shape[0], x.shape[0])
    if max_iter < 1:
        raise ParamError("max_iter must be >= 1")

    labels = _assign(x, centroids)
    _repair_empty(x, labels, centroids)
    history: List[float] = []
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        centroids = _means(x, labels, centroids)
        new_labels = _assign(x, centroids)
        _repair_empty(x, new_labels, centroids)
        history.append(_objective(x, new_labels, centroids))
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels

    labels = new_labels
    centroids = _means(x, labels, centroids)
    objective = _objective(x, labels, centroids)
    if not converged:
        history.append(objective)
        logger.debug("lloyd hit max_iter=%d without a label fixed point", max_iter)

    labels.setflags(write=False)
    centroids.setflags(write=False)
    return ClusterAssignment(
        labels=labels,
        centroids=centroids,
        objective=objective,
        iterations=iterations,
        history=tuple(history),
    )


def kmeans_best_of(rows, k: int, restarts: int = 10, rng_seed: int = 0, max_iter: int = 100) -> ClusterAssignment:
    """Best of `restarts` seeded k-means++ runs; ties keep the earliest restart."""
    if restarts < 1:
        raise ParamError("restarts must be >= 1")
    x = _as_rows(rows)
    _check_k(k, x.shape[0])

    best = None
    for i, stream in enumerate(np.random.SeedSequence(rng_seed).spawn(restarts)):
        init = kmeans_pp_seed(x, k, stream)
        run = lloyd(x, init, max_iter=max_iter)
        logger.debug("k-means restart %d: objective=%.6g iterations=%d", i, run.objective, run.iterations)
        if best is None or run.objective < best.objective:
            best = run
    return best


# -----------------------------
# Exhaustive oracle
# -----------------------------

def exhaustive_kmeans_oracle(rows, k: int) -> float:
    """
    Exact minimum of the k-means objective over all surjective labelings.

    Uses sum |u_i|^2 - sum_c |S_c|^2 / n_c with S_c the cluster sums, so
    centroids are implicitly the cluster means. Only for n <= 10, k <= 3.
    """
    x = _as_rows(rows)
    n = x.shape[0]
    if n > ORACLE_MAX_POINTS or k > ORACLE_MAX_CLUSTERS:
        raise OracleSizeError(
            f"exhaustive oracle is limited to n <= {ORACLE_MAX_POINTS}, k <= {ORACLE_MAX_CLUSTERS} (got n={n}, k={k})"
        )
    _check_k(k, n)

    labelings = np.array(list(itertools.product(range(k), repeat=n)), dtype=np.intp)
    onehot = (labelings[:, :, None] == np.arange(k)[None, None, :]).astype(np.float64)
    counts = onehot.sum(axis=1)
    surjective = (counts > 0).all(axis=1)
    onehot = onehot[surjective]
    counts = counts[surjective]

    sums = np.einsum("mnk,nd->mkd", onehot, x)
    between = (np.einsum("mkd,mkd->mk", sums, sums) / counts).sum(axis=1)
    total = float(np.einsum("nd,nd->", x, x))
    return float(max((total - between).min(), 0.0))


__all__ = [
    "ClusterAssignment",
    "kmeans_pp_seed",
    "lloyd",
    "kmeans_best_of",
    "exhaustive_kmeans_oracle",
]
