import pytest
from hypothesis import HealthCheck, settings

from gec_forge import profile_for

# Property suites run a lot of examples; shut off the per-example deadline so
# slow CI boxes do not produce flaky timing failures.
settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def hi():
    return profile_for("hi")


@pytest.fixture(scope="session")
def ml():
    return profile_for("ml")
