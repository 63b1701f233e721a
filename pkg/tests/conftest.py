import numpy as np
import pytest

from nashdpy.game.game import NormalFormGame


@pytest.fixture
def matching_pennies():
    u1 = [[1, 0], [0, 1]]
    u2 = [[0, 1], [1, 0]]
    return NormalFormGame([2, 2], [u1, u2], name='mp', player_names=['A', 'B'])


@pytest.fixture
def prisoners_dilemma():
    # actions C=0, D=1, already on [0, 1]
    u1 = [[2 / 3, 0.0], [1.0, 1 / 3]]
    u2 = [[2 / 3, 1.0], [0.0, 1 / 3]]
    return NormalFormGame([2, 2], [u1, u2], name='pd')


@pytest.fixture
def single_player():
    return NormalFormGame([2], [[0.0, 1.0]], name='argmax')


@pytest.fixture
def zero_game():
    return NormalFormGame([2, 2], np.zeros((2, 4)), name='zero')


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
