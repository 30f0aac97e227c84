import mock
import numpy as np
import pytest

from concswap.config import Config, TestConfig
from concswap.core.cache import CACHE
from tests.constants import SEED


@pytest.fixture()
def test_config():
    return TestConfig


@pytest.fixture(autouse=True)
def small_sweeps():
    """Sweep and worker sizes from TestConfig for every test."""
    with mock.patch.multiple(Config, SWEEP_GRID=TestConfig.SWEEP_GRID,
                             SWEEP_CURVE_POINTS=TestConfig.SWEEP_CURVE_POINTS,
                             MAX_WORKERS=TestConfig.MAX_WORKERS):
        yield


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.PCG64(SEED))


@pytest.fixture()
def lapack():
    with mock.patch.object(Config, 'EIGENSOLVER', 'lapack'):
        yield


@pytest.fixture()
def empty_cache():
    CACHE.clear()
    yield CACHE
    CACHE.clear()
