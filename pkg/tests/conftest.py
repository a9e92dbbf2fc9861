import pytest

from hlya.samples import abelian, aff1, heisenberg_twisted, sl2


@pytest.fixture(scope="session")
def e0():
    return abelian()


@pytest.fixture(scope="session")
def e1():
    return aff1()


@pytest.fixture(scope="session")
def e2():
    return sl2()


@pytest.fixture(scope="session")
def e3():
    return heisenberg_twisted()


@pytest.fixture(scope="session")
def bundled(e0, e1, e2, e3):
    return [e0, e1, e2, e3]
