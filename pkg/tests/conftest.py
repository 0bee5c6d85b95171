import pytest

from tau_spectra import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # absorb JIT compilation so runtime assertions measure the algorithms
    _kernels.warmup()
