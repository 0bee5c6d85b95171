"""Hot numeric kernels with numba-jitted and pure-numpy twin implementations.

The jitted path is the default whenever numba imports successfully.  Setting
the environment variable TAU_SPECTRA_NUMBA to one of 0/false/off/no selects
the numpy path instead; the numpy path is also used automatically when numba
is missing.  Both twins of every kernel compute the same quantities with the
same recurrences, differing only in how the loops are expressed, and both are
exercised by the test suite and the benchmark script.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("TAU_SPECTRA_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


# ---------------------------------------------------------------------------
# derivative matrix: column recurrence
#
# Column j+1 is produced from columns j and j-1:
#   eta[i, j+1] = (alpha[i-1]*eta[i-1, j] + (beta[i]-beta[j])*eta[i, j]
#                  + gamma[i+1]*eta[i+1, j] - gamma[j]*eta[i, j-1]) / alpha[j]
#   eta[j, j+1] = (alpha[j-1]*eta[j-1, j] + 1) / alpha[j]
# with eta[0, 1] = 1/alpha[0] and column 0 zero.
# ---------------------------------------------------------------------------


def _derivative_table_np(alpha, beta, gamma, s):
    eta = np.zeros((s, s))
    if s >= 2:
        eta[0, 1] = 1.0 / alpha[0]
    for j in range(1, s - 1):
        col = (beta[:j] - beta[j]) * eta[:j, j] + gamma[1 : j + 1] * eta[1 : j + 1, j]
        col -= gamma[j] * eta[:j, j - 1]
        col[1:] += alpha[: j - 1] * eta[: j - 1, j]
        eta[:j, j + 1] = col / alpha[j]
        eta[j, j + 1] = (alpha[j - 1] * eta[j - 1, j] + 1.0) / alpha[j]
    return eta


def _derivative_table_nb_impl(alpha, beta, gamma, s):
    eta = np.zeros((s, s))
    if s >= 2:
        eta[0, 1] = 1.0 / alpha[0]
    for j in range(1, s - 1):
        inv = 1.0 / alpha[j]
        for i in range(j):
            head = alpha[i - 1] * eta[i - 1, j] if i > 0 else 0.0
            eta[i, j + 1] = inv * (
                head
                + (beta[i] - beta[j]) * eta[i, j]
                + gamma[i + 1] * eta[i + 1, j]
                - gamma[j] * eta[i, j - 1]
            )
        eta[j, j + 1] = inv * (alpha[j - 1] * eta[j - 1, j] + 1.0)
    return eta


# ---------------------------------------------------------------------------
# integral matrix: back substitution against the derivative matrix
#
# theta[j+1, j] = alpha[j]/(j+1), then for i = j-1 .. 0
#   theta[i+1, j] = -(alpha[i]/(i+1)) * sum_{k=i+2}^{j+1} eta[i, k]*theta[k, j].
# eta_ext must be built at size s+1 so the k = j+1 = s entries of the last
# column exist; theta is returned with s+1 rows for the same reason.
# ---------------------------------------------------------------------------


def _integral_table_np(alpha, eta_ext, s):
    theta = np.zeros((s + 1, s))
    for j in range(s):
        theta[j + 1, j] = alpha[j] / (j + 1)
    for i in range(s - 2, -1, -1):
        acc = eta_ext[i, i + 2 : s + 1] @ theta[i + 2 : s + 1, :]
        theta[i + 1, i + 1 :] = (-alpha[i] / (i + 1)) * acc[i + 1 :]
    return theta


def _integral_table_nb_impl(alpha, eta_ext, s):
    theta = np.zeros((s + 1, s))
    for j in range(s):
        theta[j + 1, j] = alpha[j] / (j + 1)
        for i in range(j - 1, -1, -1):
            acc = 0.0
            for k in range(i + 2, j + 2):
                acc += eta_ext[i, k] * theta[k, j]
            theta[i + 1, j] = (-alpha[i] / (i + 1)) * acc
    return theta


# ---------------------------------------------------------------------------
# LU factorization with partial pivoting, packed in place.
#
# Returns -1 on success, or the column index whose pivot candidates are all
# exactly zero.  piv[k] records the row swapped into position k.
# ---------------------------------------------------------------------------


def _lu_factor_np(a, piv):
    n = a.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv[k] = p
        if a[p, k] == 0.0:
            return k
        if p != k:
            a[[k, p]] = a[[p, k]]
        a[k + 1 :, k] /= a[k, k]
        if k + 1 < n:
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return -1


def _lu_factor_nb_impl(a, piv):
    n = a.shape[0]
    for k in range(n):
        p = k
        amax = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > amax:
                amax = v
                p = i
        piv[k] = p
        if amax == 0.0:
            return k
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
        akk = a[k, k]
        for i in range(k + 1, n):
            m = a[i, k] / akk
            a[i, k] = m
            for j in range(k + 1, n):
                a[i, j] -= m * a[k, j]
    return -1


# ---------------------------------------------------------------------------
# Substitution against the packed factors.  b is overwritten with the
# solution.  The transposed variant solves A^T x = b from the same factors.
# ---------------------------------------------------------------------------


def _lu_substitute_np(lu, piv, b):
    n = lu.shape[0]
    for k in range(n):
        p = piv[k]
        if p != k:
            b[k], b[p] = b[p], b[k]
    for i in range(1, n):
        b[i] -= lu[i, :i] @ b[:i]
    for i in range(n - 1, -1, -1):
        b[i] = (b[i] - lu[i, i + 1 :] @ b[i + 1 :]) / lu[i, i]
    return b


def _lu_substitute_nb_impl(lu, piv, b):
    n = lu.shape[0]
    for k in range(n):
        p = piv[k]
        if p != k:
            tmp = b[k]
            b[k] = b[p]
            b[p] = tmp
    for i in range(1, n):
        s = b[i]
        for j in range(i):
            s -= lu[i, j] * b[j]
        b[i] = s
    for i in range(n - 1, -1, -1):
        s = b[i]
        for j in range(i + 1, n):
            s -= lu[i, j] * b[j]
        b[i] = s / lu[i, i]
    return b


def _lu_substitute_t_np(lu, piv, b):
    n = lu.shape[0]
    for i in range(n):
        b[i] = (b[i] - lu[:i, i] @ b[:i]) / lu[i, i]
    for i in range(n - 2, -1, -1):
        b[i] -= lu[i + 1 :, i] @ b[i + 1 :]
    for k in range(n - 1, -1, -1):
        p = piv[k]
        if p != k:
            b[k], b[p] = b[p], b[k]
    return b


def _lu_substitute_t_nb_impl(lu, piv, b):
    n = lu.shape[0]
    for i in range(n):
        s = b[i]
        for j in range(i):
            s -= lu[j, i] * b[j]
        b[i] = s / lu[i, i]
    for i in range(n - 2, -1, -1):
        s = b[i]
        for j in range(i + 1, n):
            s -= lu[j, i] * b[j]
        b[i] = s
    for k in range(n - 1, -1, -1):
        p = piv[k]
        if p != k:
            tmp = b[k]
            b[k] = b[p]
            b[p] = tmp
    return b


# ---------------------------------------------------------------------------
# Clenshaw summation of sum_k coeffs[k] * nu_k(x) over a grid of points.
# alpha/beta/gamma must extend to index len(coeffs)+1.
# ---------------------------------------------------------------------------


def _clenshaw_grid_np(alpha, beta, gamma, coeffs, xs):
    n = coeffs.shape[0] - 1
    b1 = np.zeros_like(xs)
    b2 = np.zeros_like(xs)
    for k in range(n, -1, -1):
        b = coeffs[k] + (xs - beta[k]) / alpha[k] * b1 - (gamma[k + 1] / alpha[k + 1]) * b2
        b2 = b1
        b1 = b
    return b1


def _clenshaw_grid_nb_impl(alpha, beta, gamma, coeffs, xs):
    n = coeffs.shape[0] - 1
    out = np.empty_like(xs)
    for p in range(xs.shape[0]):
        x = xs[p]
        b1 = 0.0
        b2 = 0.0
        for k in range(n, -1, -1):
            b = coeffs[k] + (x - beta[k]) / alpha[k] * b1 - (gamma[k + 1] / alpha[k + 1]) * b2
            b2 = b1
            b1 = b
        out[p] = b1
    return out


if HAVE_NUMBA:
    _derivative_table_nb = njit(cache=True)(_derivative_table_nb_impl)
    _integral_table_nb = njit(cache=True)(_integral_table_nb_impl)
    _lu_factor_nb = njit(cache=True)(_lu_factor_nb_impl)
    _lu_substitute_nb = njit(cache=True)(_lu_substitute_nb_impl)
    _lu_substitute_t_nb = njit(cache=True)(_lu_substitute_t_nb_impl)
    _clenshaw_grid_nb = njit(cache=True)(_clenshaw_grid_nb_impl)
else:
    _derivative_table_nb = None
    _integral_table_nb = None
    _lu_factor_nb = None
    _lu_substitute_nb = None
    _lu_substitute_t_nb = None
    _clenshaw_grid_nb = None

if USE_NUMBA:
    derivative_table = _derivative_table_nb
    integral_table = _integral_table_nb
    lu_factor_inplace = _lu_factor_nb
    lu_substitute = _lu_substitute_nb
    lu_substitute_t = _lu_substitute_t_nb
    clenshaw_grid = _clenshaw_grid_nb
else:
    derivative_table = _derivative_table_np
    integral_table = _integral_table_np
    lu_factor_inplace = _lu_factor_np
    lu_substitute = _lu_substitute_np
    lu_substitute_t = _lu_substitute_t_np
    clenshaw_grid = _clenshaw_grid_np


def warmup() -> None:
    """Run every active kernel once at a tiny size to absorb JIT compilation."""
    alpha = np.array([1.0, 2 / 3, 3 / 5, 4 / 7, 5 / 9, 6 / 11])
    beta = np.zeros(6)
    gamma = np.array([0.0, 1 / 3, 2 / 5, 3 / 7, 4 / 9, 5 / 11])
    eta = derivative_table(alpha, beta, gamma, 5)
    integral_table(alpha, eta, 4)
    a = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]])
    piv = np.zeros(3, dtype=np.int64)
    lu_factor_inplace(a, piv)
    lu_substitute(a, piv, np.array([1.0, 2.0, 3.0]))
    lu_substitute_t(a, piv, np.array([1.0, 2.0, 3.0]))
    clenshaw_grid(alpha, beta, gamma, np.array([1.0, 0.5, 0.25]), np.array([0.0, 0.5]))
