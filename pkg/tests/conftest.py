import os

# must precede every fuzzy_approx import: omniconf reads it at import time
os.environ.setdefault("ENV_FOR_DYNACONF", "test")

import numpy as np
import pytest

from fuzzy_approx.function_space import DomainGrid
from fuzzy_approx.fuzzy_core import LevelGrid


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid():
    return LevelGrid.uniform(11)


@pytest.fixture
def domain():
    return DomainGrid.uniform(21)
