"""Gaussian kernel evaluation and dense kernel-matrix assembly.

The kernel is ``k(x, y) = exp(-||x - y||^2 / gamma^2)`` with the Euclidean
norm, where ``gamma > 0`` is the bandwidth.  All matrices are dense
``float64``; problem sizes targeted here (n up to ~10^4) make dense storage
the simple correct choice.  Entries that underflow are flushed to 0 by IEEE
arithmetic; every downstream linear solve adds a positive ridge, so no
jitter parameter is exposed.
"""

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from .errors import InputError

__all__ = ["gaussian_eval", "kernel_matrix", "cross_kernel"]


def check_bandwidth(gamma) -> float:
    """Validate a bandwidth and return it as a float."""
    gamma = float(gamma)
    if not np.isfinite(gamma) or gamma <= 0.0:
        raise InputError(f"bandwidth gamma must be a positive finite real, got {gamma!r}")
    return gamma


def as_points(X, name: str = "X") -> np.ndarray:
    """Coerce to an (n, d) float array; 1-D input is read as n points in R^1."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InputError(f"{name} must be a 2-D array of points, got shape {X.shape}")
    if X.shape[0] == 0:
        raise InputError(f"{name} must contain at least one point")
    return X


def gaussian_eval(x, y, gamma) -> float:
    """Evaluate the Gaussian kernel at a single pair of points.

    Parameters
    ----------
    x, y : array_like
        Points in R^d (same dimension).
    gamma : float
        Bandwidth, > 0.

    Returns
    -------
    float
        ``exp(-||x - y||^2 / gamma^2)``, in (0, 1].
    """
    gamma = check_bandwidth(gamma)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise InputError(f"dimension mismatch: x has {x.size} coordinates, y has {y.size}")
    diff = x - y
    return float(np.exp(-float(diff @ diff) / gamma**2))


def kernel_matrix(X, gamma) -> np.ndarray:
    """Assemble the n x n Gaussian kernel matrix of a point set.

    Each pair is computed once and mirrored, so the result is symmetric to
    exact bit equality, with unit diagonal and all entries in [0, 1].

    Parameters
    ----------
    X : array_like, shape (n, d)
        Points.
    gamma : float
        Bandwidth, > 0.
    """
    gamma = check_bandwidth(gamma)
    X = as_points(X)
    if X.shape[0] == 1:
        return np.ones((1, 1))
    sq = squareform(pdist(X, "sqeuclidean"))
    return np.exp(-sq / gamma**2)


def cross_kernel(X_test, X_train, gamma) -> np.ndarray:
    """Evaluate the kernel between two point sets.

    Returns the (m, n) matrix with entry (i, j) equal to
    ``gaussian_eval(X_test[i], X_train[j], gamma)``.
    """
    gamma = check_bandwidth(gamma)
    X_test = as_points(X_test, "X_test")
    X_train = as_points(X_train, "X_train")
    if X_test.shape[1] != X_train.shape[1]:
        raise InputError(
            f"dimension mismatch: test points have d={X_test.shape[1]}, "
            f"train points have d={X_train.shape[1]}"
        )
    sq = cdist(X_test, X_train, "sqeuclidean")
    return np.exp(-sq / gamma**2)
