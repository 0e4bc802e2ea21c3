import numpy as np
import pytest

from refourier.funcmodel import get_entry


@pytest.fixture(scope="session")
def entries():
    return {name: get_entry(name) for name in ("exp_decay", "t_exp_decay", "gaussian", "indicator")}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
