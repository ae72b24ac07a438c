import pytest

from mgalg.chains import all_coordinates, build_chain
from mgalg.verify import corpus


@pytest.fixture(scope='session')
def corpus6():
    return corpus(6)


@pytest.fixture(scope='session')
def chains4():
    return [build_chain(c) for c in all_coordinates(4)]
