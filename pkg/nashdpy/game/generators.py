"""
Seeded constructors for the benchmark game classes.

Every random draw comes from numpy's PCG64 bit generator seeded with the caller's unsigned integer seed through
numpy.random.SeedSequence (np.random.Generator(np.random.PCG64(seed))). PCG64 output for a given seed is fixed
across platforms, so corpora are reproducible anywhere numpy runs.

Class constructions
    random               every payoff u_i(a) drawn i.i.d. Uniform[0, 1], player 1's tensor first, each tensor
                         in player-1-slowest order
    prisoners_dilemma_n  actions Cooperate=0 / Defect=1. With k the number of OTHER players cooperating,
                         u_i = PD_BENEFIT * k / (n - 1) - PD_COST * [i cooperates], then normalized to [0, 1].
                         Defect is strictly dominant and all-Defect is the unique equilibrium.
    majority_voting      each player holds a private Uniform[0, 1] value per alternative (n x m draws, player
                         major). The alternative with most votes wins, lowest index breaks ties, and every player
                         receives their value of the winner.
    congestion           actions are facilities. Facility j costs a_j * load with a_j ~ Uniform[0.1, 1]
                         (f draws). u_i = 1 - cost / (n * max_j a_j), clipped to [0, 1]. It is a potential game.
    coordination         u_i = 1 when every player picks the same action, otherwise 0.
"""

import logging

import numpy as np
from nashdpy.game.game import NormalFormGame, normalize
from nashdpy.game._config import (
    CLASS_BOUNDS,
    CONGESTION_SLOPE,
    GAME_CLASSES,
    PD_BENEFIT,
    PD_COST
)
from nashdpy.game._exceptions import (
    cannot_set,
    check_capacity,
    check_game_class,
    ActionCountError,
    ConfigError,
    PlayerCountError
)

logger = logging.getLogger(__name__)


def make_rng(seed):
    """
    Returns the PCG64-backed numpy Generator for an unsigned integer seed
    """
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def check_seed(seed):
    if isinstance(seed, (int, np.integer)) and not isinstance(seed, bool) and seed >= 0:
        return int(seed)
    raise ConfigError('seed', seed, 'must be an unsigned integer')


def _check_bounds(class_name, players, actions):
    low, high, min_actions = CLASS_BOUNDS[class_name]
    if players < low or (high is not None and players > high):
        raise PlayerCountError(class_name, players, low, high)
    if actions < min_actions:
        raise ActionCountError(class_name, actions, min_actions)
    check_capacity(players, actions ** players)


def _profiles(players, actions):
    """
    Returns an array (players, actions ** players) listing every pure profile in player-1-slowest order
    """
    grid = np.indices((actions,) * players, dtype=np.min_scalar_type(actions))
    return grid.reshape(players, -1)


def _vote_counts(profiles, actions):
    num_profiles = profiles.shape[1]
    counts = np.zeros((num_profiles, actions), dtype=np.int32)
    rows = np.arange(num_profiles)
    for votes in profiles:
        counts[rows, votes] += 1
    return counts


def random_game(players: int, actions: int, seed: int = 0):
    _check_bounds('random', players, actions)
    rng = make_rng(seed)
    payoffs = rng.random((players, actions ** players))
    return NormalFormGame([actions] * players, payoffs, name=f'random n={players} m={actions} seed={seed}')


def prisoners_dilemma_n(players: int):
    _check_bounds('prisoners_dilemma_n', players, 2)
    coop = (_profiles(players, 2) == 0).astype(float)
    cooperators = coop.sum(axis=0)
    payoffs = [PD_BENEFIT * (cooperators - coop[i]) / (players - 1) - PD_COST * coop[i] for i in range(players)]
    raw = NormalFormGame([2] * players, payoffs, name=f'prisoners_dilemma_n n={players}')
    return normalize(raw)


def majority_voting_values(players: int, alternatives: int, seed: int = 0):
    """
    Returns the (players, alternatives) private values behind majority_voting for the same seed
    """
    return make_rng(seed).random((players, alternatives))


def majority_voting(players: int, alternatives: int, seed: int = 0):
    _check_bounds('majority_voting', players, alternatives)
    values = majority_voting_values(players, alternatives, seed)
    winners = np.argmax(_vote_counts(_profiles(players, alternatives), alternatives), axis=1)
    payoffs = values[:, winners]
    return NormalFormGame([alternatives] * players, payoffs, name=f'majority_voting n={players} m={alternatives} seed={seed}')


def congestion_slopes(facilities: int, seed: int = 0):
    """
    Returns the per-facility cost slopes a_j behind congestion_game for the same seed
    """
    low, high = CONGESTION_SLOPE
    return make_rng(seed).uniform(low, high, facilities)


def congestion_game(players: int, facilities: int, seed: int = 0):
    _check_bounds('congestion', players, facilities)
    slopes = congestion_slopes(facilities, seed)
    profiles = _profiles(players, facilities)
    loads = _vote_counts(profiles, facilities)
    rows = np.arange(profiles.shape[1])
    cost_max = players * slopes.max()
    payoffs = [np.clip(1.0 - slopes[choice] * loads[rows, choice] / cost_max, 0.0, 1.0) for choice in profiles]
    return NormalFormGame([facilities] * players, payoffs, name=f'congestion n={players} f={facilities} seed={seed}')


def coordination_game(players: int, actions: int):
    _check_bounds('coordination', players, actions)
    profiles = _profiles(players, actions)
    matched = np.all(profiles == profiles[0], axis=0).astype(float)
    return NormalFormGame([actions] * players, np.tile(matched, (players, 1)), name=f'coordination n={players} m={actions}')


GENERATORS = {
    'random': lambda n, m, seed: random_game(n, m, seed),
    'prisoners_dilemma_n': lambda n, m, seed: prisoners_dilemma_n(n),
    'majority_voting': lambda n, m, seed: majority_voting(n, m, seed),
    'congestion': lambda n, m, seed: congestion_game(n, m, seed),
    'coordination': lambda n, m, seed: coordination_game(n, m)
}


class GameSpec(object):
    def __init__(self, class_name: str, num_players: int, actions_per_player: int, seed: int = 0):
        """
        GameSpec names one generated game instance.
        :param class_name: str              -One of the GAME_CLASSES codes
        :param num_players: int             -Number of players
        :param actions_per_player: int      -Actions per player, forced to 2 for prisoners_dilemma_n
        :param seed: int                    -Unsigned generator seed, ignored by the deterministic classes
        """
        self._class_name = check_game_class(class_name)
        self._num_players = int(num_players)
        self._actions = 2 if self._class_name == 'prisoners_dilemma_n' else int(actions_per_player)
        self._seed = check_seed(seed)
        _check_bounds(self._class_name, self._num_players, self._actions)

    def __repr__(self):
        return f'<GameSpec {self._class_name} | {self._num_players} players | {self._actions} actions | seed {self._seed}>'

    def build(self):
        logger.debug('generating %s', self)
        return GENERATORS[self._class_name](self._num_players, self._actions, self._seed)

    @property
    def class_name(self):
        return self._class_name

    @class_name.setter
    def class_name(self, value):
        cannot_set(self.__class__.__name__, 'class_name')

    @property
    def class_title(self):
        return GAME_CLASSES[self._class_name]

    @class_title.setter
    def class_title(self, value):
        cannot_set(self.__class__.__name__, 'class_title')

    @property
    def num_players(self):
        return self._num_players

    @num_players.setter
    def num_players(self, value):
        cannot_set(self.__class__.__name__, 'num_players')

    @property
    def actions_per_player(self):
        return self._actions

    @actions_per_player.setter
    def actions_per_player(self, value):
        cannot_set(self.__class__.__name__, 'actions_per_player')

    @property
    def seed(self):
        return self._seed

    @seed.setter
    def seed(self, value):
        cannot_set(self.__class__.__name__, 'seed')

    @property
    def game_size(self):
        return self._actions ** self._num_players

    @game_size.setter
    def game_size(self, value):
        cannot_set(self.__class__.__name__, 'game_size')
