"""Pure-NumPy Matérn-5/2 kernel matrices (fallback backend).

Same contract as the compiled module ``_kernels_cy``: ARD scaling, C-order
float64 outputs. ``matern52_train`` also returns the scaled distance matrix
so marginal-likelihood gradients can reuse it.
"""

from __future__ import annotations

import numpy as np

SQRT5 = np.sqrt(5.0)

BACKEND_NAME = "numpy"


def matern52_cross(X1: np.ndarray, X2: np.ndarray, lengthscales: np.ndarray,
                   signal_variance: float) -> np.ndarray:
    """Covariance matrix between two point sets, shape (len(X1), len(X2))."""
    Z1 = np.asarray(X1, dtype=float) / lengthscales
    Z2 = np.asarray(X2, dtype=float) / lengthscales
    diff = Z1[:, None, :] - Z2[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    t = SQRT5 * d
    return signal_variance * (1.0 + t + t * t / 3.0) * np.exp(-t)


def matern52_train(X: np.ndarray, lengthscales: np.ndarray,
                   signal_variance: float) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric kernel matrix of one point set plus the ARD distance matrix."""
    Z = np.asarray(X, dtype=float) / lengthscales
    diff = Z[:, None, :] - Z[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    t = SQRT5 * d
    K = signal_variance * (1.0 + t + t * t / 3.0) * np.exp(-t)
    return K, d
