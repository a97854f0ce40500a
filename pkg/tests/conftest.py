import pytest
from hypothesis import settings

from mdsrepair.field import GF

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def gf256():
    return GF(8)


@pytest.fixture(scope="session")
def gf65536():
    return GF(16)
