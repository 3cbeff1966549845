import pytest

from znfree import factory


@pytest.fixture(scope="session")
def t1():
    return factory.t1()


@pytest.fixture(scope="session")
def t_ab():
    return factory.t_ab()


@pytest.fixture(scope="session")
def fa3():
    return factory.free_abelian(3)


@pytest.fixture(scope="session")
def surf2():
    return factory.surface_orientable(2)


@pytest.fixture(scope="session")
def ns3():
    return factory.surface_nonorientable(3)


@pytest.fixture(scope="session")
def all_towers(t1, t_ab, fa3, surf2, ns3):
    return {"t1": t1, "t_ab": t_ab, "fa3": fa3, "surf2": surf2, "ns3": ns3}
