import numpy as np
import pytest

from fillinlab.graph import Graph


def named_graphs():
    return {
        "c4": Graph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "c5": Graph.build(5, [(i, (i + 1) % 5) for i in range(5)]),
        "c6": Graph.build(6, [(i, (i + 1) % 6) for i in range(6)]),
        "k4": Graph.build(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
        "k5": Graph.build(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]),
        "p3": Graph.build(3, [(0, 1), (1, 2)]),
        "star5": Graph.build(6, [(0, i) for i in range(1, 6)]),
        "2k2": Graph.build(4, [(0, 1), (2, 3)]),
        "prism": Graph.build(
            6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
        ),
        "petersen": Graph.build(
            10,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        ),
    }


@pytest.fixture(scope="session")
def graphs():
    return named_graphs()


@pytest.fixture
def rng():
    return np.random.default_rng(0xF111)


def random_graph(rng, n, p=None):
    if p is None:
        p = float(rng.uniform(0.15, 0.85))
    from fillinlab.generate import gnp

    return gnp(n, p, rng)
