# eigen.py
"""
eigen.py

Eigendecomposition of the normalized Laplacian, zero-eigenvalue counting and
the spectral embedding U.

Two solvers:
- "lapack": scipy.linalg.eigh (Householder tridiagonalization + implicit QL/QR)
- "jacobi": cyclic Jacobi rotations on numpy arrays, used as an independent
  reference; stops when every off-diagonal entry is below 1e-12 * |L|_F

Either way the eigenpairs come back stable-sorted by eigenvalue.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.linalg

from junctions.errors import EigenConvergenceError, ParamError
from junctions.graph import LaplacianMatrix

logger = logging.getLogger(__name__)

JACOBI_REL_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 50


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # (n,), non-decreasing
    eigenvectors: np.ndarray  # (n, n), column j pairs with eigenvalues[j]

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])


@dataclass(frozen=True, eq=False)
class SpectralEmbedding:
    rows: np.ndarray  # (n, k); row i embeds point i

    @property
    def k(self) -> int:
        return int(self.rows.shape[1])


# -----------------------------
# Solvers
# -----------------------------

def _lapack_eigh(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    try:
        # driver "ev": Householder tridiagonalization then implicit-shift QL/QR
        return scipy.linalg.eigh(a, driver="ev", check_finite=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise EigenConvergenceError(f"lapack eigensolver failed on a {a.shape[0]}x{a.shape[0]} matrix: {e}") from e


def jacobi_eigh(a: np.ndarray, max_sweeps: int = DEFAULT_MAX_SWEEPS, rel_tol: float = JACOBI_REL_TOL) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi eigenvalue algorithm for a real symmetric matrix.

    Each rotation zeroes a[p, q]; V accumulates the rotations so that
    a_original = V diag(w) V^T. Raises EigenConvergenceError when `max_sweeps`
    sweeps do not bring every off-diagonal magnitude under rel_tol * |a|_F.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    target = rel_tol * np.linalg.norm(a)

    for sweep in range(max_sweeps + 1):
        off = np.abs(a - np.diag(np.diag(a)))
        if n < 2 or off.max() <= target:
            logger.debug("jacobi converged after %d sweeps (n=%d)", sweep, n)
            return np.diag(a).copy(), v
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    raise EigenConvergenceError(
        f"jacobi eigensolver did not converge on a {n}x{n} matrix within {max_sweeps} sweeps"
    )


def eigendecompose(
    laplacian: Union[LaplacianMatrix, np.ndarray],
    solver: str = "lapack",
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> SpectralDecomposition:
    a = laplacian.entries if isinstance(laplacian, LaplacianMatrix) else np.asarray(laplacian, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParamError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParamError("matrix has non-finite entries")

    if solver == "lapack":
        w, v = _lapack_eigh(a)
    elif solver == "jacobi":
        w, v = jacobi_eigh(a, max_sweeps=max_sweeps)
    else:
        raise ParamError(f"unknown eigen solver '{solver}'")

    order = np.argsort(w, kind="stable")
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


# -----------------------------
# Component count and embedding
# -----------------------------

def count_zero_eigenvalues(dec: SpectralDecomposition, tol: float) -> int:
    if not tol > 0:
        raise ParamError("zero_eig_tol must be positive")
    return int(np.count_nonzero(np.abs(dec.eigenvalues) <= tol))


def spectral_embed(dec: SpectralDecomposition, k: int, row_normalize: bool = True) -> SpectralEmbedding:
    if not 1 <= k <= dec.n:
        raise ParamError(f"embedding dimension k={k} must lie in [1, {dec.n}]")

    rows = np.array(dec.eigenvectors[:, :k], dtype=np.float64, copy=True)
    if row_normalize:
        norms = np.linalg.norm(rows, axis=1)
        nonzero = norms > 0
        rows[nonzero] /= norms[nonzero, None]
    rows.setflags(write=False)
    return SpectralEmbedding(rows=rows)


__all__ = [
    "SpectralDecomposition",
    "SpectralEmbedding",
    "jacobi_eigh",
    "eigendecompose",
    "count_zero_eigenvalues",
    "spectral_embed",
]
