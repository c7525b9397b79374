import numpy as np
import pytest

from bellcorr.bellstate import BellDiagonalState, sample_physical
from bellcorr.channel import DephasingChannel

SEED = 20100190


@pytest.fixture
def seed():
    return SEED


@pytest.fixture
def rng(seed):
    return np.random.default_rng(seed)


@pytest.fixture
def base_state():
    return BellDiagonalState(0.8, -0.4, 0.5)


@pytest.fixture
def base_channel():
    return DephasingChannel.scaled(0.1)


@pytest.fixture
def random_states(rng):
    return sample_physical(rng, 200)
