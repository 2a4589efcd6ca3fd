import pytest
from hypothesis import HealthCheck, settings

from modscale import GridSpec, synthesize

settings.register_profile(
    "modscale", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("modscale")


@pytest.fixture(scope="session")
def gaussian():
    return synthesize("gaussian", 1)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(1, 5, 4)
