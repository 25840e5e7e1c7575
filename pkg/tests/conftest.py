import pathlib
import sys

try:
    import ransomgame  # noqa: F401
except ImportError:  # running from a source checkout without installing
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import numpy as np
import pytest

from ransomgame import (AttackerStrategy, FixedValue, GameEnvironment,
                        PopulationMean)

I50 = 0.02
OPTIMAL = (4.68, 0.091, 0.104)


@pytest.fixture
def optimal_strategy():
    return AttackerStrategy(*OPTIMAL)


@pytest.fixture
def fixed_env():
    return GameEnvironment(i_fifty=I50, target_value=FixedValue(1.0))


@pytest.fixture
def mean_env():
    return GameEnvironment(i_fifty=I50, target_value=PopulationMean(1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20220920)
