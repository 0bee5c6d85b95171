"""Both twins of every kernel must compute the same numbers.

The numpy and jitted bodies share the recurrences but not the summation
order, so agreement is to roundoff, not bitwise.
"""

import numpy as np
import pytest

from tau_spectra import _kernels as kernels
from tau_spectra.basis import jacobi, laguerre, recurrence_arrays

BASES = [jacobi(0.0, 0.0), jacobi(-0.5, -0.5), jacobi(1.0, -0.9), jacobi(10.0, 0.0), laguerre()]


def _close(a, b):
    assert np.allclose(a, b, rtol=1e-12, atol=1e-14), np.max(np.abs(a - b))


@pytest.mark.parametrize("basis", BASES, ids=lambda b: b.label())
def test_derivative_table_twins(basis):
    s = 60
    alpha, beta, gamma = recurrence_arrays(basis, s + 1)
    _close(
        kernels._derivative_table_np(alpha, beta, gamma, s),
        kernels._derivative_table_nb_impl(alpha, beta, gamma, s),
    )


@pytest.mark.parametrize("basis", BASES, ids=lambda b: b.label())
def test_integral_table_twins(basis):
    s = 60
    alpha, beta, gamma = recurrence_arrays(basis, s + 1)
    eta = kernels._derivative_table_np(alpha, beta, gamma, s)
    _close(
        kernels._integral_table_np(alpha, eta, s - 1),
        kernels._integral_table_nb_impl(alpha, eta, s - 1),
    )


def test_lu_twins():
    rng = np.random.default_rng(11)
    for size in (3, 17, 60):
        a = rng.standard_normal((size, size)) + size * np.eye(size)
        a1, p1 = a.copy(), np.zeros(size, dtype=np.int64)
        a2, p2 = a.copy(), np.zeros(size, dtype=np.int64)
        g1 = kernels._lu_factor_np(a1, p1)
        g2 = kernels._lu_factor_nb_impl(a2, p2)
        assert np.array_equal(p1, p2)
        _close(a1, a2)
        assert g1 == pytest.approx(g2, rel=1e-12)
        b = rng.standard_normal(size)
        _close(
            kernels._lu_substitute_np(a1, p1, b.copy()),
            kernels._lu_substitute_nb_impl(a2, p2, b.copy()),
        )
        _close(
            kernels._lu_substitute_t_np(a1, p1, b.copy()),
            kernels._lu_substitute_t_nb_impl(a2, p2, b.copy()),
        )


def test_clenshaw_grid_twins():
    rng = np.random.default_rng(12)
    alpha, beta, gamma = recurrence_arrays(jacobi(0.0, 0.0), 81)
    coeffs = rng.standard_normal(80)
    xs = np.linspace(-1.0, 1.0, 33)
    _close(
        kernels._clenshaw_grid_np(alpha, beta, gamma, coeffs, xs),
        kernels._clenshaw_grid_nb_impl(alpha, beta, gamma, coeffs, xs),
    )


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_compiled_matches_python_body():
    alpha, beta, gamma = recurrence_arrays(jacobi(-0.5, -0.5), 41)
    eta_c = kernels._derivative_table_nb(alpha, beta, gamma, 40)
    eta_p = kernels._derivative_table_nb_impl(alpha, beta, gamma, 40)
    _close(eta_c, eta_p)
    _close(
        kernels._integral_table_nb(alpha, eta_c, 39),
        kernels._integral_table_nb_impl(alpha, eta_p, 39),
    )


def test_flag_selects_numpy_path(monkeypatch):
    monkeypatch.setenv("TAU_SPECTRA_NUMBA", "off")
    assert not kernels._numba_requested()
    monkeypatch.setenv("TAU_SPECTRA_NUMBA", "1")
    assert kernels._numba_requested()
