import numpy as np
import pytest

from fracbvp import GridFunction


@pytest.fixture
def unit_grid():
    """f(x) = 1 on [0, 1] at h = 1e-3."""
    return GridFunction.sample(lambda x: np.ones_like(x), 1000)


@pytest.fixture
def ramp_grid():
    """f(x) = x on [0, 1] at h = 1e-3."""
    return GridFunction.sample(lambda x: x, 1000)
