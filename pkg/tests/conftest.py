import numpy as np
import pytest

from stabrec.clifford import enumerate_group


@pytest.fixture(scope="session")
def c1():
    return enumerate_group(1)


@pytest.fixture(scope="session")
def c2():
    return enumerate_group(2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dense_equal_up_to_phase(a, b, tol=1e-10):
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    c = a[idx] / b[idx]
    return abs(abs(c) - 1) < tol and np.allclose(a, c * b, atol=tol)
