import random

import pytest
from hypothesis import HealthCheck, settings

from kpart import Instance

settings.register_profile(
    "kpart",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("kpart")


@pytest.fixture
def worked_instance() -> Instance:
    return Instance((1, 1, 2, 3, 4, 5))


@pytest.fixture(scope="session")
def sweep_instances() -> list[tuple[Instance, int]]:
    """200 small seeded instances shared by the exhaustive sweeps."""
    rng = random.Random("conftest:sweep")
    out = []
    for _ in range(200):
        n = rng.randint(3, 10)
        k = rng.randint(2, min(4, n - 1))
        out.append((Instance(tuple(rng.randint(1, 30) for _ in range(n))), k))
    return out
