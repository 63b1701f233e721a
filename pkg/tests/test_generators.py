from itertools import product

import numpy as np
import pytest

from nashdpy.game.game import StrategyProfile, best_response_dynamics, epsilon, pure_payoff
from nashdpy.game.generators import (
    GameSpec,
    congestion_game,
    congestion_slopes,
    coordination_game,
    majority_voting,
    majority_voting_values,
    make_rng,
    prisoners_dilemma_n,
    random_game
)
from nashdpy.game._config import GAME_CLASSES, PD_COST
from nashdpy.game._exceptions import (
    ActionCountError,
    CapacityError,
    ConfigError,
    GameClassError,
    PlayerCountError,
    ReadOnlyAttributeError
)


def test_random_game_is_deterministic():
    assert random_game(2, 3, seed=7) == random_game(2, 3, seed=7)
    assert random_game(2, 3, seed=7) != random_game(2, 3, seed=8)


def test_random_game_sizes():
    assert random_game(2, 10, seed=0).num_profiles == 100
    big = random_game(6, 10, seed=1)
    assert big.num_profiles == 10 ** 6
    assert all(i.min() >= 0.0 and i.max() <= 1.0 for i in big.payoffs)


def test_random_game_bounds():
    with pytest.raises(CapacityError):
        random_game(9, 10)
    with pytest.raises(ActionCountError):
        random_game(2, 1)
    with pytest.raises(PlayerCountError):
        random_game(0, 3)
    with pytest.raises(ConfigError):
        random_game(2, 2, seed=-1)


def test_make_rng_uses_pcg64():
    assert isinstance(make_rng(3).bit_generator, np.random.PCG64)
    assert make_rng(3).random() == make_rng(3).random()


def test_prisoners_dilemma_two_players():
    game = prisoners_dilemma_n(2)
    assert game.action_counts == [2, 2]
    assert epsilon(game, StrategyProfile.pure((1, 1), [2, 2])) == 0.0


def test_prisoners_dilemma_all_cooperate_gain():
    game = prisoners_dilemma_n(3)
    gain = PD_COST / (1.0 + PD_COST)
    assert epsilon(game, StrategyProfile.pure((0, 0, 0), [2, 2, 2])) == pytest.approx(gain)


@pytest.mark.parametrize('players', range(2, 8))
def test_prisoners_dilemma_defect_strictly_dominates(players):
    game = prisoners_dilemma_n(players)
    assert all(i.min() == 0.0 and i.max() == 1.0 for i in game.payoffs)
    for actions in product(range(2), repeat=players):
        for player in range(players):
            cooperate = list(actions)
            defect = list(actions)
            cooperate[player], defect[player] = 0, 1
            assert pure_payoff(game, player, defect) > pure_payoff(game, player, cooperate)
    assert epsilon(game, StrategyProfile.pure((1,) * players, [2] * players)) == 0.0


def test_prisoners_dilemma_player_bounds():
    with pytest.raises(PlayerCountError):
        prisoners_dilemma_n(1)
    with pytest.raises(PlayerCountError):
        prisoners_dilemma_n(21)


def test_majority_voting_winners():
    values = majority_voting_values(3, 3, seed=5)
    game = majority_voting(3, 3, seed=5)
    for j in range(3):
        for player in range(3):
            assert pure_payoff(game, player, (j, j, j)) == values[player, j]
    for player in range(3):
        assert pure_payoff(game, player, (0, 1, 2)) == values[player, 0]
        assert pure_payoff(game, player, (2, 1, 1)) == values[player, 1]

    two = majority_voting(3, 2, seed=9)
    two_values = majority_voting_values(3, 2, seed=9)
    for player in range(3):
        assert pure_payoff(two, player, (0, 0, 1)) == two_values[player, 0]


def test_majority_voting_bounds():
    with pytest.raises(PlayerCountError):
        majority_voting(2, 3)
    assert all(i.min() >= 0.0 and i.max() <= 1.0 for i in majority_voting(4, 3, seed=1).payoffs)


def test_congestion_loads():
    slopes = congestion_slopes(2, seed=3)
    game = congestion_game(2, 2, seed=3)
    cost_max = 2 * slopes.max()
    assert pure_payoff(game, 0, (0, 0)) == pytest.approx(1.0 - slopes[0] * 2 / cost_max)
    assert pure_payoff(game, 1, (0, 0)) == pytest.approx(1.0 - slopes[0] * 2 / cost_max)
    assert pure_payoff(game, 0, (1, 0)) == pytest.approx(1.0 - slopes[1] / cost_max)
    assert pure_payoff(game, 1, (1, 0)) == pytest.approx(1.0 - slopes[0] / cost_max)
    low, high = 0.1, 1.0
    assert np.all((slopes >= low) & (slopes <= high))


def test_congestion_best_response_dynamics_reaches_pure_equilibrium():
    rng = np.random.default_rng(0)
    for seed in range(20):
        game = congestion_game(3, 4, seed=seed)
        start = tuple(int(i) for i in rng.integers(0, 4, size=3))
        final, _, converged = best_response_dynamics(game, start)
        assert converged
        assert epsilon(game, final.to_strategy_profile()) == 0.0


def test_coordination_equilibria():
    game = coordination_game(3, 3)
    assert all(pure_payoff(game, i, (0, 0, 0)) == 1.0 for i in range(3))
    assert epsilon(game, StrategyProfile.pure((0, 0, 0), [3, 3, 3])) == 0.0
    assert all(pure_payoff(game, i, (0, 1, 2)) == 0.0 for i in range(3))
    assert epsilon(game, StrategyProfile.pure((0, 1, 2), [3, 3, 3])) == 0.0

    small = coordination_game(2, 2)
    uniform = StrategyProfile.uniform([2, 2])
    assert epsilon(small, uniform) == 0.0


def test_game_spec():
    spec = GameSpec('prisoners_dilemma_n', 4, 7, seed=2)
    assert spec.actions_per_player == 2
    assert spec.game_size == 16
    assert spec.class_title == GAME_CLASSES['prisoners_dilemma_n']
    assert spec.build() == prisoners_dilemma_n(4)
    assert GameSpec('random', 2, 3, seed=7).build() == random_game(2, 3, seed=7)
    with pytest.raises(GameClassError):
        GameSpec('chicken', 2, 2)
    with pytest.raises(ReadOnlyAttributeError):
        spec.seed = 4


@pytest.mark.parametrize('class_name', list(GAME_CLASSES))
def test_every_class_stays_on_unit_interval(class_name):
    game = GameSpec(class_name, 3, 3, seed=11).build()
    assert all(i.min() >= 0.0 and i.max() <= 1.0 for i in game.payoffs)
