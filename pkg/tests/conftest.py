import random

import pytest

from mqmsynth import fixtures, from_permutation


@pytest.fixture
def worked4():
    return fixtures.worked4()


@pytest.fixture
def alu():
    return fixtures.alu_bdd_288()


def random_function(n, rng=None):
    rng = rng or random
    perm = list(range(1 << n))
    rng.shuffle(perm)
    return from_permutation(perm, n)
