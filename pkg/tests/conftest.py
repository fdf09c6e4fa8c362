import pytest

from epireflect import fintop
from epireflect.documents import FIXTURES, load_any


def fixture_space(name):
    return load_any(FIXTURES / name)[1]


@pytest.fixture
def S():
    return fintop.sierpinski()


@pytest.fixture
def D2():
    return fintop.discrete(2)


@pytest.fixture
def I2():
    return fintop.indiscrete(2)


@pytest.fixture
def X1():
    return fixture_space("x1.json")


@pytest.fixture
def X2():
    return fixture_space("x2.json")


@pytest.fixture
def Z4coset():
    return fixture_space("z4-coset.json")


@pytest.fixture
def Z2ind():
    return fixture_space("z2-indiscrete.json")
