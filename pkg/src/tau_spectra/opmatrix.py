"""Operational matrices built directly from three-term recurrences.

All matrices use the column convention: a function u = sum_k a_k nu_k is the
column vector a, and an operation L maps a to L_nu a, where column j of L_nu
holds the nu-coefficients of L[nu_j].  The shift (multiplication by x) matrix
is tridiagonal straight from the recurrence; the derivative and integral
matrices follow from column recurrences in the same coefficients, so no
ill-conditioned change of basis is involved.  The monomial-basis matrices and
the similarity transform V Pi V^{-1} are provided for comparison; that
classic route degrades quickly with size, which is the point being made.

Truncation never corrupts stored entries: integral and Volterra builds run
the underlying recurrences one index larger internally, so every returned
entry equals the corresponding entry of the infinite matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import RecurrenceBasis, eval_basis_derivs, recurrence_arrays
from .linalg import solve_upper_triangular

__all__ = [
    "OpMatrix",
    "shift_matrix",
    "derivative_matrix",
    "integral_matrix",
    "volterra_matrix",
    "power_matrices",
    "similarity_pi",
]


@dataclass(frozen=True)
class OpMatrix:
    """A finite section of an operational matrix.

    kind is one of shift, derivative, integral, volterra, power_shift,
    power_derivative, power_integral; size is the stored section size s
    (data has shape (s, s)); lower is the lower integration limit for the
    volterra kind and None otherwise.
    """

    kind: str
    size: int
    data: np.ndarray
    lower: float | None = None


def _check_size(s: int) -> None:
    if s < 1:
        raise ValueError(f"matrix size must be >= 1, got {s}")


def shift_matrix(basis: RecurrenceBasis, s: int) -> OpMatrix:
    """Tridiagonal matrix of multiplication by x: column j holds
    (gamma_j, beta_j, alpha_j) at rows j-1, j, j+1."""
    _check_size(s)
    alpha, beta, gamma = recurrence_arrays(basis, s)
    data = np.zeros((s, s))
    idx = np.arange(s)
    data[idx, idx] = beta
    data[idx[1:], idx[1:] - 1] = alpha[: s - 1]
    data[idx[1:] - 1, idx[1:]] = gamma[1:]
    return OpMatrix(kind="shift", size=s, data=data)


def derivative_matrix(basis: RecurrenceBasis, s: int) -> OpMatrix:
    """Strictly upper triangular matrix of d/dx: column j holds the
    nu-coefficients of nu_j'."""
    _check_size(s)
    alpha, beta, gamma = recurrence_arrays(basis, s + 1)
    data = _kernels.derivative_table(alpha, beta, gamma, s)
    return OpMatrix(kind="derivative", size=s, data=data)


def _integral_table_ext(basis: RecurrenceBasis, s: int) -> np.ndarray:
    """Antiderivative coefficients with one extra row, shape (s+1, s)."""
    alpha, beta, gamma = recurrence_arrays(basis, s + 2)
    eta_ext = _kernels.derivative_table(alpha, beta, gamma, s + 1)
    return _kernels.integral_table(alpha, eta_ext, s)


def integral_matrix(basis: RecurrenceBasis, s: int) -> OpMatrix:
    """Matrix of antidifferentiation, with the free constant fixed by a zero
    nu_0-component: row 0 is identically zero."""
    if s < 2:
        raise ValueError(f"integral section needs size >= 2, got {s}")
    theta = _integral_table_ext(basis, s)
    return OpMatrix(kind="integral", size=s, data=np.ascontiguousarray(theta[:s]))


def volterra_matrix(basis: RecurrenceBasis, s: int, a: float) -> OpMatrix:
    """Matrix of u -> integral from a to x of u: the antiderivative matrix
    with row 0 replaced so every column vanishes at x = a."""
    if s < 2:
        raise ValueError(f"integral section needs size >= 2, got {s}")
    a = float(a)
    theta = _integral_table_ext(basis, s)
    nu_at_a = eval_basis_derivs(basis, s, a)[0]
    data = np.ascontiguousarray(theta[:s])
    data[0, :] = -(nu_at_a[1:] @ theta[1:])
    return OpMatrix(kind="volterra", size=s, data=data, lower=a)


def power_matrices(s: int) -> tuple[OpMatrix, OpMatrix, OpMatrix]:
    """Monomial-basis sections (H, M, Theta): derivative, shift,
    antiderivative with zero constant term."""
    _check_size(s)
    h = np.zeros((s, s))
    m = np.zeros((s, s))
    t = np.zeros((s, s))
    k = np.arange(s - 1)
    h[k, k + 1] = k + 1.0
    m[k + 1, k] = 1.0
    t[k + 1, k] = 1.0 / (k + 1.0)
    return (
        OpMatrix(kind="power_derivative", size=s, data=h),
        OpMatrix(kind="power_shift", size=s, data=m),
        OpMatrix(kind="power_integral", size=s, data=t),
    )


def similarity_pi(v: np.ndarray, pi_power: np.ndarray) -> np.ndarray:
    """Classic change-of-basis route: map a monomial-basis operator section
    into the nu basis as V^{-T} Pi_power V^T via one triangular solve.

    Kept as the comparison path; cond(V) grows so fast with size that this
    route loses all accuracy where the recurrence-built matrices do not.
    """
    v = np.asarray(v, dtype=np.float64)
    pi_power = np.asarray(pi_power, dtype=np.float64)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ValueError(f"V must be square, got shape {v.shape}")
    if pi_power.shape != v.shape:
        raise ValueError(
            f"operator section {pi_power.shape} does not match V {v.shape}"
        )
    return solve_upper_triangular(v.T, pi_power @ v.T)
