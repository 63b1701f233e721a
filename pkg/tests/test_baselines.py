from functools import lru_cache

import numpy as np
import pytest

from nashdpy.game.game import NormalFormGame, StrategyProfile, epsilon, normalize
from nashdpy.game.generators import prisoners_dilemma_n, random_game
from nashdpy.solver.nashd import GdConfig, solve_nashd_gd
from nashdpy.solver.baselines import solve_fictitious_play, solve_regret_matching, _regret_matching_strategy
from nashdpy.game._config import TRACE_SERIES
from nashdpy.game._exceptions import ConfigError, GameArgError


def test_fictitious_play_matching_pennies(matching_pennies):
    trace = solve_fictitious_play(matching_pennies, rounds=1000)
    assert trace.epsilon <= 0.05
    assert trace.rounds == 1000
    assert trace.iterations == 1000


def test_fictitious_play_prisoners_dilemma(prisoners_dilemma):
    trace = solve_fictitious_play(prisoners_dilemma, rounds=100)
    np.testing.assert_array_equal(trace.profile[0], [0.0, 1.0])
    np.testing.assert_array_equal(trace.profile[1], [0.0, 1.0])
    assert trace.epsilon == 0.0


def test_fictitious_play_single_player(single_player):
    trace = solve_fictitious_play(single_player, rounds=10)
    np.testing.assert_array_equal(trace.profile[0], [0.0, 1.0])
    assert trace.epsilon == 0.0


def test_fictitious_play_marginals_stay_on_simplex(rng):
    game = NormalFormGame([3, 2, 4], rng.random((3, 24)))
    trace = solve_fictitious_play(game, rounds=50, sample_every=1)
    assert len(trace.records_df) == 50
    for vec in trace.profile:
        assert vec.sum() == pytest.approx(1.0, abs=1e-9)
        assert np.all(vec >= 0.0)


def test_regret_matching_matching_pennies(matching_pennies):
    trace = solve_regret_matching(matching_pennies, rounds=1000)
    assert trace.epsilon <= 0.05


def test_regret_matching_prisoners_dilemma(prisoners_dilemma):
    trace = solve_regret_matching(prisoners_dilemma, rounds=1000)
    assert trace.profile.total_variation(StrategyProfile.pure((1, 1), [2, 2])) <= 0.05
    assert trace.epsilon <= 0.01


def test_regret_matching_constant_game(zero_game):
    trace = solve_regret_matching(zero_game, rounds=100)
    for vec in trace.profile:
        np.testing.assert_array_equal(vec, [0.5, 0.5])
    assert trace.epsilon == 0.0


def test_regret_matching_strategy_is_uniform_without_positive_regret():
    np.testing.assert_array_equal(_regret_matching_strategy(np.array([-1.0, 0.0, -3.0])), [1 / 3] * 3)
    np.testing.assert_allclose(_regret_matching_strategy(np.array([3.0, -1.0, 1.0])), [0.75, 0.0, 0.25])


@pytest.mark.parametrize('players', [2, 3, 5])
def test_baselines_solve_prisoners_dilemma_class(players):
    game = prisoners_dilemma_n(players)
    assert solve_fictitious_play(game, rounds=1000).epsilon <= 0.01
    assert solve_regret_matching(game, rounds=1000).epsilon <= 0.01


def test_trace_sampling_includes_last_round(matching_pennies):
    trace = solve_regret_matching(matching_pennies, rounds=25, sample_every=10)
    assert list(trace.records_df.columns) == TRACE_SERIES
    assert trace.records_df['iteration'].tolist() == [10, 20, 25]
    assert (trace.records_df['epsilon'] >= 0.0).all()
    assert (trace.records_df['nashd'] >= trace.records_df['epsilon']).all()


def test_trace_epsilon_matches_output_profile(rng):
    game = NormalFormGame([3, 3], rng.random((2, 9)))
    for solver in (solve_fictitious_play, solve_regret_matching):
        trace = solver(game, rounds=200)
        assert trace.epsilon == pytest.approx(epsilon(normalize(game), trace.profile), abs=1e-12)


def test_baselines_are_deterministic(rng):
    game = NormalFormGame([2, 3, 3], rng.random((3, 18)))
    for solver in (solve_fictitious_play, solve_regret_matching):
        first, second = solver(game, rounds=300, seed=5), solver(game, rounds=300, seed=5)
        assert first.records_df.equals(second.records_df)
        assert first.profile.total_variation(second.profile) == 0.0


def test_baseline_argument_errors(matching_pennies):
    with pytest.raises(ConfigError):
        solve_fictitious_play(matching_pennies, rounds=0)
    with pytest.raises(ConfigError):
        solve_regret_matching(matching_pennies, rounds=10, sample_every=0)
    with pytest.raises(ConfigError):
        solve_regret_matching(matching_pennies, rounds=10, seed=-1)
    with pytest.raises(GameArgError):
        solve_fictitious_play([[1, 0], [0, 1]], rounds=10)


@pytest.mark.slow
def test_regret_matching_trend_on_zero_sum_games():
    improved = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        u1 = rng.random(9)
        game = NormalFormGame([3, 3], [u1, -u1])
        records = solve_regret_matching(game, rounds=1000).records_df.set_index('iteration')
        if records.loc[1000, 'epsilon'] <= records.loc[100, 'epsilon']:
            improved += 1
    assert improved >= 90


@lru_cache(maxsize=None)
def mean_epsilons(players):
    gd, rm = [], []
    for seed in range(100):
        game = random_game(players, 10, seed=seed)
        gd.append(solve_nashd_gd(game, GdConfig(seed=seed)).epsilon)
        rm.append(solve_regret_matching(game, rounds=1000, seed=seed).epsilon)
    return float(np.mean(gd)), float(np.mean(rm))


@pytest.mark.slow
@pytest.mark.parametrize('players', [2, 3])
def test_nashd_gd_mean_epsilon_bound(players):
    gd, _ = mean_epsilons(players)
    assert gd <= 0.08


@pytest.mark.slow
@pytest.mark.parametrize('players', [
    pytest.param(2, marks=pytest.mark.xfail(strict=True, reason='regret matching averages lower epsilon on 2x10 games, see DESIGN.md')),
    3
])
def test_nashd_gd_beats_regret_matching_on_average(players):
    gd, rm = mean_epsilons(players)
    assert gd <= rm
