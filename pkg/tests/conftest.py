import pytest
from hypothesis import HealthCheck, settings

from prefcone import generators

settings.register_profile(
    "exact", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")


@pytest.fixture
def quad2():
    return generators.quad2()


@pytest.fixture
def lex23():
    return generators.lex23()
