import math
import random
from fractions import Fraction

import pytest

from clustermod.catalog import catalog
from clustermod.seeds import Seed


@pytest.fixture(scope="session")
def a2():
    return catalog("a2")


@pytest.fixture(scope="session")
def l2():
    return catalog("lk:2")


@pytest.fixture(scope="session")
def l3():
    return catalog("lk:3")


@pytest.fixture(scope="session")
def x7():
    return catalog("x7")


@pytest.fixture(scope="session")
def annulus():
    return catalog("annulus-dehn")


def random_valid_seed(rng: random.Random, max_rank: int = 5, allow_frozen: bool = True) -> Seed:
    """Random d-skew-symmetrizable seed: eps[i][j] = a[i][j] * d[i] with a
    antisymmetric, which gives eps[i][j]*d[j] = -eps[j][i]*d[i] identically."""
    n = rng.randint(1, max_rank)
    if n == 1:
        d = [1]
    else:
        while True:
            d = [rng.randint(1, 3) for _ in range(n)]
            if math.gcd(*d) == 1:
                break
    n_frozen = rng.randint(0, n - 1) if (allow_frozen and n > 1) else 0
    frozen = list(range(n - n_frozen, n))
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if i in frozen and j in frozen and rng.random() < 0.5:
                val = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            else:
                val = Fraction(rng.randint(-2, 2))
            a[i][j] = val
            a[j][i] = -val
    eps = [[a[i][j] * d[i] for j in range(n)] for i in range(n)]
    return Seed.make(range(n), eps, frozen, d)


def random_positive_coords(rng: random.Random, size: int, bound: int = 9):
    return tuple(Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(size))


def random_tropical_coords(rng: random.Random, size: int):
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(size))
