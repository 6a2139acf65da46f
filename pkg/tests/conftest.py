import math

import pytest
from hypothesis import HealthCheck, settings

# Quadrature-backed properties occasionally trip the per-example deadline
# on a cold numpy; wall-clock limits live in the acceptance tests instead.
settings.register_profile(
    "spinharm",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("spinharm")


@pytest.fixture
def interior_points():
    """A spread of interior (theta, phi) pairs clear of both poles."""
    thetas = (0.3, 0.9, math.pi / 2, 2.1, math.pi - 0.3)
    phis = (0.0, 1.0, math.pi, 4.5)
    return [(t, p) for t in thetas for p in phis]
