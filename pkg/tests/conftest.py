import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.spatial.distance import pdist

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def min_distance(points):
    """Brute force minimum pairwise Euclidean distance."""
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return np.inf
    return float(pdist(points).min())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
