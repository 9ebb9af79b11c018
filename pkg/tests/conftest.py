from importlib import resources

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tribez import read_patch

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = resources.files("tribez") / "fixtures"


def fixture_path(name):
    return str(FIXTURES / name)


@pytest.fixture(scope="session")
def table1():
    return read_patch(fixture_path("table1.json"))


@pytest.fixture(scope="session")
def example2():
    return {k: read_patch(fixture_path(f"example2_{k}.json")) for k in ("parent", "Y", "R")}


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def random_triangle_points(rng, count):
    return rng.dirichlet([1.0, 1.0, 1.0], size=count)[:, :2]
