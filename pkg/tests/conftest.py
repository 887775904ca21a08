import math

import numpy as np
import pytest

from framescale import Frame
from framescale.ensembles import SplitMix64, mixed_ensemble, random_orthogonal

SQ3 = math.sqrt(3.0)
SQ2 = math.sqrt(2.0)

MERCEDES = [[1.0, 0.0], [-0.5, SQ3 / 2], [-0.5, -SQ3 / 2]]
SKEW_BASIS = [[1.0, 0.0], [1.0, 1.0]]
BASIS_PLUS_DIAGONAL = [[1.0, 0.0], [0.0, 1.0], [1 / SQ2, 1 / SQ2]]
REPEATED = [[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]


@pytest.fixture
def mercedes():
    return Frame(MERCEDES)


@pytest.fixture
def skew_basis():
    return Frame(SKEW_BASIS)


@pytest.fixture
def basis_plus_diagonal():
    return Frame(BASIS_PLUS_DIAGONAL)


@pytest.fixture
def repeated():
    return Frame(REPEATED)


@pytest.fixture
def rng():
    return SplitMix64(12345)


@pytest.fixture(scope="session")
def small_ensemble():
    """200 mixed frames, N in {2,3,4}, M in [N, 2N+2]."""
    return list(mixed_ensemble(777, 200))


def orthogonal(rng, n):
    return random_orthogonal(rng, n)
