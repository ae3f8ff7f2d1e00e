import math

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def admissible_ce(m):
    return [(c, e) for c in range(m + 1) for e in range(m + 1) if math.gcd(m, c, e) == 1]
