import pytest
from itertools import combinations

from hzcore.graphs import Graph


@pytest.fixture(scope="session")
def k5_minus():
    return Graph.from_edges(
        5, [e for e in combinations(range(5), 2) if e != (0, 1)]
    )


@pytest.fixture(scope="session")
def petersen():
    from hzcore.classify import petersen as p

    return p()


@pytest.fixture(scope="session")
def pstar():
    from hzcore.classify import petersen_minus

    return petersen_minus()


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))
