import numpy as np
import pytest

from selfsim import Grid1D, make_params


@pytest.fixture
def params_half():
    return make_params(0.5, 1.0, 1.0)


@pytest.fixture
def params_one():
    return make_params(1.0, 1.0, 1.0)


@pytest.fixture
def params_three_halves():
    return make_params(1.5, 1.0, 1.0)


@pytest.fixture
def small_grid():
    return Grid1D.centered(2048, 0.05)


@pytest.fixture
def gaussian_field(small_grid):
    return small_grid.sample(lambda x: np.exp(-x * x))
