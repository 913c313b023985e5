import pytest

from liegal.catalog import aff, heisenberg, sl
from liegal.linalg import Field


@pytest.fixture
def Q():
    return Field.rationals()


@pytest.fixture
def F2():
    return Field.prime(2)


@pytest.fixture
def F3():
    return Field.prime(3)


@pytest.fixture
def F5():
    return Field.prime(5)


@pytest.fixture
def sl2_q(Q):
    return sl(Q, 2)


@pytest.fixture
def h3_q(Q):
    return heisenberg(Q, 1)


@pytest.fixture
def aff_f5(F5):
    return aff(F5)
