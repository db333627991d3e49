import numpy as np
import pytest

from lhdopt import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed tests measure work, not JIT."""
    _kernels.warm_up()


@pytest.fixture
def gen():
    """Plain NumPy generator for test-local sampling (not the library RNG)."""
    return np.random.default_rng(20240801)


def random_design(gen, n, k):
    return np.column_stack([gen.permutation(n) + 1 for _ in range(k)]).astype(np.int64)
