import numpy as np
import pytest

from burstfold.fields import get_field


@pytest.fixture(scope="session")
def gf13():
    return get_field(13)


@pytest.fixture(scope="session")
def gf16():
    return get_field(2, 4)


@pytest.fixture(scope="session")
def gf64():
    return get_field(2, 6)


@pytest.fixture(scope="session")
def gf256():
    return get_field(2, 8)


@pytest.fixture(scope="session")
def gf9():
    return get_field(3, 2)


def rng(seed=0):
    return np.random.default_rng(seed)
