"""Cloud builders shared by the test modules."""

import functools

import numpy as np
from sklearn.metrics import adjusted_rand_score

from junctions.core_types import PointCloud
from junctions.scan_sim import LidarConfig, cast_scan
from junctions.scenarios import builtin_scenario

# Blob centres sit on a 10 m grid; with spread 0.3 m no two blobs come within
# the ~3.5 m radius where exp(-1.5 d^2) stays above 1e-8.
BLOB_SPACING = 10.0
BLOB_SPREAD = 0.3


def make_blobs(num_blobs, points_per_blob, seed=0, spread=BLOB_SPREAD):
    """Tight Gaussian blobs far apart. Returns (cloud, true blob index per point)."""
    rng = np.random.default_rng(seed)
    centres = np.array([[BLOB_SPACING * (i % 3), BLOB_SPACING * (i // 3)] for i in range(num_blobs)])
    sizes = np.broadcast_to(np.asarray(points_per_blob), (num_blobs,))
    pts = [rng.normal(centres[i], spread, size=(int(sizes[i]), 2)) for i in range(num_blobs)]
    truth = np.repeat(np.arange(num_blobs), sizes)
    return PointCloud(np.vstack(pts)), truth


@functools.lru_cache(maxsize=None)
def scenario_scan(name, seed=0, noise=0.0):
    env, expected = builtin_scenario(name)
    return cast_scan(env, LidarConfig(noise_stddev=noise), rng_seed=seed), expected


def same_partition(a, b):
    return len(a) == len(b) and adjusted_rand_score(np.asarray(a), np.asarray(b)) == 1.0
