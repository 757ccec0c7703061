import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hankelbands import carleman_symbol, mathieu_symbol


@pytest.fixture
def carleman():
    # period 2*pi, i.e. omega = 1
    return carleman_symbol(2.0 * np.pi)


@pytest.fixture
def mathieu():
    return lambda A, omega=1.0: mathieu_symbol(A, omega)


@pytest.fixture
def k_grid():
    return np.linspace(0.0, 0.5, 101)
