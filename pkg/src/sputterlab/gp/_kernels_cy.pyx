# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Matérn-5/2 kernel matrices.

These are the hot kernels of the fully-Bayesian refit loop: every MCMC
sweep rebuilds the training covariance several times, and at the small
matrix sizes of an active-learning campaign the Python/NumPy dispatch
overhead dominates. Contract matches ``_kernels_np``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()

cdef double SQRT5 = sqrt(5.0)

BACKEND_NAME = "compiled"


def matern52_cross(X1, X2, lengthscales, double signal_variance):
    """Covariance matrix between two point sets, shape (len(X1), len(X2))."""
    cdef double[:, ::1] A = np.ascontiguousarray(X1, dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(X2, dtype=np.float64)
    cdef double[::1] ls = np.ascontiguousarray(lengthscales, dtype=np.float64)
    cdef Py_ssize_t n1 = A.shape[0], n2 = B.shape[0], ndim = A.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n1, n2))
    cdef double[:, ::1] K = out
    cdef double[::1] inv_ls = np.empty(ndim)
    cdef Py_ssize_t i, j, k
    cdef double d2, dx, t
    for k in range(ndim):
        inv_ls[k] = 1.0 / ls[k]
    for i in range(n1):
        for j in range(n2):
            d2 = 0.0
            for k in range(ndim):
                dx = (A[i, k] - B[j, k]) * inv_ls[k]
                d2 += dx * dx
            t = SQRT5 * sqrt(d2)
            K[i, j] = signal_variance * (1.0 + t + t * t / 3.0) * exp(-t)
    return out


def matern52_train(X, lengthscales, double signal_variance):
    """Symmetric kernel matrix of one point set plus the ARD distance matrix."""
    cdef double[:, ::1] A = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[::1] ls = np.ascontiguousarray(lengthscales, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0], ndim = A.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] kout = np.empty((n, n))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dout = np.empty((n, n))
    cdef double[:, ::1] K = kout
    cdef double[:, ::1] D = dout
    cdef double[::1] inv_ls = np.empty(ndim)
    cdef Py_ssize_t i, j, k
    cdef double d2, dx, d, t, v
    for k in range(ndim):
        inv_ls[k] = 1.0 / ls[k]
    for i in range(n):
        K[i, i] = signal_variance
        D[i, i] = 0.0
        for j in range(i + 1, n):
            d2 = 0.0
            for k in range(ndim):
                dx = (A[i, k] - A[j, k]) * inv_ls[k]
                d2 += dx * dx
            d = sqrt(d2)
            t = SQRT5 * d
            v = signal_variance * (1.0 + t + t * t / 3.0) * exp(-t)
            K[i, j] = v
            K[j, i] = v
            D[i, j] = d
            D[j, i] = d
    return kout, dout
