"""Brute-force check: octonionic Hermitian matrices as real symmetric matrices.

An n x n octonionic Hermitian matrix acts on O^n = R^(8n) through left
multiplication of its entries, which gives an 8n x 8n real symmetric matrix.
Its spectrum is computed here with a cyclic Jacobi rotation method so that this
path shares nothing with the analytic solver beyond the octonion table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hermitian import Herm2, Herm3, OctVec, as_matrix, scale_of
from .octonion import left_mul_matrix

__all__ = [
    "RealSpectrum",
    "Cluster",
    "embed",
    "coords",
    "lift",
    "jacobi_eigen",
    "embedded_spectrum",
    "cluster_eigenvalues",
    "spectrum_with_multiplicity",
    "kernel_basis",
    "cluster_gap",
]


@dataclass(frozen=True)
class RealSpectrum:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, orthonormal
    sweeps: int
    converged: bool


@dataclass(frozen=True)
class Cluster:
    value: float
    count: int


def embed(A):
    """8n x 8n real symmetric matrix of v -> A v on coefficient vectors.

    Block (i, j) is the left-multiplication matrix of A[i, j].  Lower blocks are
    written as transposes of the upper ones, so the result is exactly symmetric.
    """
    arr = as_matrix(A).array
    n = arr.shape[0]
    M = np.zeros((8 * n, 8 * n))
    for i in range(n):
        for j in range(i, n):
            block = left_mul_matrix(arr[i, j])
            M[8 * i:8 * i + 8, 8 * j:8 * j + 8] = block
            if j != i:
                M[8 * j:8 * j + 8, 8 * i:8 * i + 8] = block.T
    return M


def coords(v: OctVec):
    return v.array.reshape(-1).copy()


def lift(x):
    """Inverse of :func:`coords`."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size not in (16, 24):
        raise ValueError(f"expected 16 or 24 real coordinates, got shape {x.shape}")
    return OctVec(x.reshape(-1, 8))


def jacobi_eigen(M, tol=1e-12, max_sweeps=100):
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Pivots are visited row by row over the strict upper triangle.  Sweeps stop
    once the off-diagonal Frobenius norm drops below ``tol * ||M||_F``.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    n = A.shape[0]
    V = np.eye(n)
    target = tol * max(np.linalg.norm(A), np.finfo(float).tiny)
    iu = np.triu_indices(n, 1)
    # pivots this small cannot keep the off-diagonal norm above target
    skip = target / (4.0 * n)

    def off_norm():
        return np.sqrt(2.0 * np.sum(A[iu] ** 2))

    sweeps = 0
    converged = off_norm() <= target
    while not converged and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                app, aqq = A[p, p], A[q, q]
                theta = (aqq - app) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp, colq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp, rowq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        converged = off_norm() <= target
    if not converged:
        warnings.warn(f"Jacobi did not converge in {max_sweeps} sweeps", RuntimeWarning)
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return RealSpectrum(w[order], V[:, order], sweeps, converged)


@lru_cache(maxsize=64)
def embedded_spectrum(A):
    """Jacobi spectrum of ``embed(A)``; cached per (hashable) Herm2/Herm3."""
    return jacobi_eigen(embed(A))


def cluster_gap(A):
    return 1e-7 * (1.0 + scale_of(A))


def cluster_eigenvalues(values, gap):
    """Group sorted values; a new cluster starts wherever consecutive values differ by more than gap."""
    values = np.sort(np.asarray(values, dtype=float))
    clusters = []
    start = 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > gap:
            chunk = values[start:k]
            clusters.append(Cluster(float(chunk.mean()), len(chunk)))
            start = k
    return clusters


def spectrum_with_multiplicity(A, gap=None):
    """Clustered eigenvalues of the real embedding with their multiplicities."""
    gap = cluster_gap(A) if gap is None else gap
    return cluster_eigenvalues(embedded_spectrum(A).eigenvalues, gap)


def kernel_basis(A, lam, tol=None):
    """Real-orthonormal eigenvectors of ``embed(A)`` at ``lam``, lifted to OctVecs.

    Empty when ``lam`` is not an eigenvalue (to within ``tol``).
    """
    if not isinstance(A, (Herm2, Herm3)):
        raise TypeError("kernel_basis expects a Herm2 or Herm3")
    tol = cluster_gap(A) if tol is None else tol
    spec = embedded_spectrum(A)
    idx = np.flatnonzero(np.abs(spec.eigenvalues - lam) <= tol)
    return [lift(spec.eigenvectors[:, k]) for k in idx]
