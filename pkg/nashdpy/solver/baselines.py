"""
Fictitious play and regret matching for N-player games.

Both run on the game normalized to [0, 1] and report the epsilon of their canonical output object:
fictitious play the empirical action frequencies, regret matching the time-averaged mixed strategy.
Both are deterministic; the seed is accepted so every algorithm shares one calling convention.
"""

import logging
import time

import numpy as np
import pandas as pd
from nashdpy.game.game import StrategyProfile, _contract, clamp_residue, normalize
from nashdpy.game.generators import check_seed
from nashdpy.game._config import PLAY_DEFAULTS, TRACE_SERIES
from nashdpy.game._exceptions import cannot_set, check_game_arg, ConfigError

logger = logging.getLogger(__name__)


class PlayTrace(object):
    def __init__(self, rounds_played, nashd_values, epsilon_values, profile, epsilon, wall_ms, rounds):
        """
        Result of a baseline run. Rows are sampled every k rounds and always include the last round;
        'iteration' counts the rounds played when the sample was taken.
        """
        self._records_df = pd.DataFrame({
            'iteration': np.asarray(rounds_played, dtype=np.int64),
            'nashd': np.asarray(nashd_values, dtype=float),
            'epsilon': np.asarray(epsilon_values, dtype=float)
        }, columns=TRACE_SERIES)
        self._profile = profile
        self._epsilon = float(epsilon)
        self._wall_ms = float(wall_ms)
        self._rounds = int(rounds)

    def __repr__(self):
        return f'<PlayTrace {self._rounds} rounds | epsilon {self._epsilon:.3g}>'

    @property
    def records_df(self):
        return self._records_df

    @records_df.setter
    def records_df(self, value):
        cannot_set(self.__class__.__name__, 'records_df')

    @property
    def profile(self):
        return self._profile

    @profile.setter
    def profile(self, value):
        cannot_set(self.__class__.__name__, 'profile')

    @property
    def epsilon(self):
        return self._epsilon

    @epsilon.setter
    def epsilon(self, value):
        cannot_set(self.__class__.__name__, 'epsilon')

    @property
    def wall_ms(self):
        return self._wall_ms

    @wall_ms.setter
    def wall_ms(self, value):
        cannot_set(self.__class__.__name__, 'wall_ms')

    @property
    def rounds(self):
        return self._rounds

    @rounds.setter
    def rounds(self, value):
        cannot_set(self.__class__.__name__, 'rounds')

    @property
    def iterations(self):
        return self._rounds

    @iterations.setter
    def iterations(self, value):
        cannot_set(self.__class__.__name__, 'iterations')


def _check_rounds(rounds, sample_every):
    if int(rounds) < 1:
        raise ConfigError('rounds', rounds, 'must be a positive integer')
    if int(sample_every) < 1:
        raise ConfigError('sample_every', sample_every, 'must be a positive integer')
    return int(rounds), int(sample_every)


def _regrets(tensors, strategies):
    out = np.empty(len(tensors))
    for i, tensor in enumerate(tensors):
        dev = _contract(tensor, strategies, keep=(i,))
        out[i] = dev.max() - dev @ strategies[i]
    return clamp_residue(out)


class _Sampler(object):
    def __init__(self, tensors, rounds, sample_every):
        self._tensors = tensors
        self._rounds = rounds
        self._every = sample_every
        self.rounds_played, self.nashd_values, self.epsilon_values = [], [], []

    def __call__(self, played, output):
        if played % self._every == 0 or played == self._rounds:
            regret = _regrets(self._tensors, output)
            self.rounds_played.append(played)
            self.nashd_values.append(float(regret.sum()))
            self.epsilon_values.append(float(regret.max()))


def solve_fictitious_play(game, rounds: int = PLAY_DEFAULTS['rounds'], seed: int = PLAY_DEFAULTS['seed'],
                          sample_every: int = PLAY_DEFAULTS['sample_every']):
    """
    Fictitious play. Every player opens on their lowest-index action; that opening play seeds the beliefs but is not part
    of the output. Then for each of `rounds` rounds every player simultaneously plays its lowest-index pure best response
    to the product of the opponents' empirical marginals (opening included), and the frequencies of those best-response
    plays are the output profile.
    """
    check_seed(seed)
    rounds, sample_every = _check_rounds(rounds, sample_every)
    game = normalize(check_game_arg(game, 'solve_fictitious_play'))
    start = time.perf_counter()

    tensors = game.tensors
    beliefs = []
    for m in game.action_counts:
        opening = np.zeros(m)
        opening[0] = 1.0
        beliefs.append(opening)
    plays = [np.zeros(m) for m in game.action_counts]
    sampler = _Sampler(tensors, rounds, sample_every)

    for t in range(rounds):
        marginals = [b / b.sum() for b in beliefs]
        actions = [int(np.argmax(_contract(tensor, marginals, keep=(i,)))) for i, tensor in enumerate(tensors)]
        for i, action in enumerate(actions):
            beliefs[i][action] += 1.0
            plays[i][action] += 1.0
        sampler(t + 1, [p / (t + 1) for p in plays])

    output = [p / rounds for p in plays]
    eps = sampler.epsilon_values[-1]
    wall_ms = (time.perf_counter() - start) * 1000
    logger.info('fp finished %s | %d rounds | epsilon %.6g | %.1f ms', game.name, rounds, eps, wall_ms)
    return PlayTrace(sampler.rounds_played, sampler.nashd_values, sampler.epsilon_values,
                     StrategyProfile(output), eps, wall_ms, rounds)


def _regret_matching_strategy(cumulative):
    positive = np.maximum(cumulative, 0.0)
    total = positive.sum()
    if total > 0.0:
        return positive / total
    return np.full(len(cumulative), 1.0 / len(cumulative))


def solve_regret_matching(game, rounds: int = PLAY_DEFAULTS['rounds'], seed: int = PLAY_DEFAULTS['seed'],
                          sample_every: int = PLAY_DEFAULTS['sample_every']):
    """
    Full-feedback regret matching. Each round every player accumulates the expected regrets
    u_i(a, sigma_-i) - u_i(sigma) against the opponents' current mixed strategies and plays proportionally to the
    positive part of its cumulative regret, uniformly when none is positive. The output is the mean of sigma_0 .. sigma_{T-1}.
    """
    check_seed(seed)
    rounds, sample_every = _check_rounds(rounds, sample_every)
    game = normalize(check_game_arg(game, 'solve_regret_matching'))
    start = time.perf_counter()

    tensors = game.tensors
    strategies = [np.full(m, 1.0 / m) for m in game.action_counts]
    cumulative = [np.zeros(m) for m in game.action_counts]
    strategy_sum = [np.zeros(m) for m in game.action_counts]
    sampler = _Sampler(tensors, rounds, sample_every)

    for t in range(rounds):
        for i in range(game.num_players):
            strategy_sum[i] += strategies[i]
        for i, tensor in enumerate(tensors):
            dev = _contract(tensor, strategies, keep=(i,))
            cumulative[i] += dev - dev @ strategies[i]
        strategies = [_regret_matching_strategy(c) for c in cumulative]
        sampler(t + 1, [s / (t + 1) for s in strategy_sum])

    output = [s / rounds for s in strategy_sum]
    eps = sampler.epsilon_values[-1]
    wall_ms = (time.perf_counter() - start) * 1000
    logger.info('rm finished %s | %d rounds | epsilon %.6g | %.1f ms', game.name, rounds, eps, wall_ms)
    return PlayTrace(sampler.rounds_played, sampler.nashd_values, sampler.epsilon_values,
                     StrategyProfile(output), eps, wall_ms, rounds)
