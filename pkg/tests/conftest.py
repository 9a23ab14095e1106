import pytest

from chromalg import dnc_engine
from config import settings


@pytest.fixture(autouse=True)
def no_fault():
    yield
    dnc_engine.clear_fault()


@pytest.fixture
def fresh_cache():
    dnc_engine.clear_dnc_cache()
    yield
    dnc_engine.clear_dnc_cache()


@pytest.fixture
def max_n():
    """Temporarily lower CHROMALG_MAX_N."""
    previous = settings.MAX_N

    def set_to(value):
        settings.MAX_N = value

    yield set_to
    settings.MAX_N = previous
