import pytest
from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, max_examples=50, deadline=None)
settings.load_profile("deterministic")

from dotspin import build_table, make_params, orbitals


@pytest.fixture(scope="session")
def params115():
    """The reference operating point x_b = 1, x_c = 1.5."""
    return make_params(1.0, 1.5)


@pytest.fixture(scope="session")
def table115(params115):
    return build_table(params115)


@pytest.fixture(scope="session")
def orbs115(table115):
    return orbitals(table115.geometry)
