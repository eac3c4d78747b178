import pytest

from kronkit.corpus import connected_graphs


@pytest.fixture(scope="session")
def connected_upto_6():
    return [g for n in range(1, 7) for g in connected_graphs(n)]


@pytest.fixture(scope="session")
def connected_upto_8():
    return [g for n in range(1, 9) for g in connected_graphs(n)]
