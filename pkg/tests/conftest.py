import random

import pytest

from twcanon.graph import Graph


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(rng, n, p):
    return Graph(
        n,
        [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p],
    )


def random_connected_graph(rng, n, p):
    while True:
        g = random_graph(rng, n, p)
        if g.is_connected():
            return g


def random_permutation(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
