import numpy as np
import pytest

from lightstore.core import CouplingVariant, default_config
from lightstore.scenarios import desk_config


@pytest.fixture(scope="session")
def config_a():
    return desk_config(CouplingVariant.CASE_A)


@pytest.fixture(scope="session")
def config_b():
    return desk_config(CouplingVariant.CASE_B)


@pytest.fixture(scope="session")
def scheme_a(config_a):
    return config_a.scheme


@pytest.fixture(scope="session")
def scheme_b(config_b):
    return config_b.scheme


@pytest.fixture(scope="session")
def full_config_a():
    return default_config(CouplingVariant.CASE_A)


@pytest.fixture(scope="session")
def full_config_b():
    return default_config(CouplingVariant.CASE_B)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
