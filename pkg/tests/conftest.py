import numpy as np
import pytest

from syncqubits.quantum import build_operators, kernel_basis


@pytest.fixture(scope="session")
def ops():
    return build_operators()


@pytest.fixture(scope="session")
def basis():
    return kernel_basis()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
