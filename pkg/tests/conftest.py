import numpy as np
import pytest

from ramangate import HilbertSpec, SystemParams, qpg_detuning_for


@pytest.fixture
def spec():
    return HilbertSpec()


@pytest.fixture
def qpg_params():
    """Phase-gate design point at delta1 = 10 g."""
    return SystemParams(delta1=10.0, delta2=qpg_detuning_for(10.0))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
