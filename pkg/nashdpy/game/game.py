"""
Normal-form games, strategy profiles and the exploitability metric.

Payoffs are stored as one flat float64 array per player. The flat order is C order over the action axes:
player 1's action index varies slowest and player N's fastest, so for action counts (|A_1|, ..., |A_N|)

    offset(a) = sum_i a_i * prod_{j > i} |A_j|

which is what numpy.ravel_multi_index computes. The on-disk Gambit order is different, see nashdpy.nfg.
"""

import logging

import numpy as np
from nashdpy.game._config import CLAMP_TOL
from nashdpy.game._exceptions import (
    cannot_set,
    check_capacity,
    check_game_arg,
    check_player_index,
    check_profile_arg,
    check_profile_shape,
    check_pure_profile,
    check_simplex,
    PayoffError,
    ShapeError
)

logger = logging.getLogger(__name__)


class NormalFormGame(object):
    def __init__(self, action_counts, payoffs, name: str = '', player_names=None):
        """
        NormalFormGame is the canonical dense representation of an N-player game.
        :param action_counts: list[int]      -The number of actions |A_i| of each player
        :param payoffs: array-like           -Either N flat tensors of length prod(|A_j|) in player-1-slowest order,
                                              or an array shaped (N, |A_1|, ..., |A_N|)
        :param name: str                     -Free text label
        :param player_names: list[str]       -Optional player labels, defaults to 'Player 1' ... 'Player N'
        """
        counts = tuple(int(i) for i in action_counts)
        if not counts or any(i < 1 for i in counts):
            raise PayoffError(f'action counts {list(action_counts)} must be a non-empty list of positive integers')
        self._action_counts = counts
        self._num_players = len(counts)
        self._num_profiles = int(np.prod(counts, dtype=np.int64))
        check_capacity(self._num_players, self._num_profiles)

        self._payoffs = self._check_payoffs(payoffs)
        self._tensors = tuple(flat.reshape(counts) for flat in self._payoffs)
        self._name = str(name)

        if player_names is None:
            self._player_names = tuple(f'Player {i}' for i in range(1, self._num_players + 1))
        else:
            self._player_names = tuple(str(i) for i in player_names)
            if len(self._player_names) != self._num_players:
                raise ShapeError(f'{len(self._player_names)} player names for {self._num_players} players')

    def __repr__(self):
        counts = 'x'.join(str(i) for i in self._action_counts)
        label = f' {self._name}' if self._name else ''
        return f'<NormalFormGame{label} | {self._num_players} players | {counts} actions>'

    def __eq__(self, other):
        if not isinstance(other, NormalFormGame):
            return NotImplemented
        return self._action_counts == other._action_counts and all(np.array_equal(i, j) for i, j in zip(self._payoffs, other._payoffs))

    __hash__ = None

    def _check_payoffs(self, payoffs):
        arr = np.array(payoffs, dtype=float)
        if arr.shape == (self._num_players, self._num_profiles):
            pass
        elif arr.shape == (self._num_players,) + self._action_counts:
            arr = arr.reshape(self._num_players, self._num_profiles)
        else:
            raise PayoffError(f'expected {self._num_players} tensors of {self._num_profiles} entries, got shape {arr.shape}')
        if not np.all(np.isfinite(arr)):
            raise PayoffError('all payoff entries must be finite reals')
        arr.flags.writeable = False
        return tuple(arr[i] for i in range(self._num_players))

    def index(self, actions):
        """
        Returns the flat offset of a pure profile in every player's payoff tensor
        """
        return int(np.ravel_multi_index(check_pure_profile(actions, self._action_counts), self._action_counts))

    def tensor(self, player):
        """
        Returns player's payoffs shaped (|A_1|, ..., |A_N|), read only
        """
        return self._tensors[check_player_index(player, self._num_players)]

    @property
    def num_players(self):
        return self._num_players

    @num_players.setter
    def num_players(self, value):
        cannot_set(self.__class__.__name__, 'num_players')

    @property
    def action_counts(self):
        return list(self._action_counts)

    @action_counts.setter
    def action_counts(self, value):
        cannot_set(self.__class__.__name__, 'action_counts')

    @property
    def num_profiles(self):
        return self._num_profiles

    @num_profiles.setter
    def num_profiles(self, value):
        cannot_set(self.__class__.__name__, 'num_profiles')

    @property
    def payoffs(self):
        return list(self._payoffs)

    @payoffs.setter
    def payoffs(self, value):
        cannot_set(self.__class__.__name__, 'payoffs')

    @property
    def tensors(self):
        return self._tensors

    @tensors.setter
    def tensors(self, value):
        cannot_set(self.__class__.__name__, 'tensors')

    @property
    def name(self):
        return self._name

    @name.setter
    def name(self, value):
        cannot_set(self.__class__.__name__, 'name')

    @property
    def player_names(self):
        return list(self._player_names)

    @player_names.setter
    def player_names(self, value):
        cannot_set(self.__class__.__name__, 'player_names')

    @property
    def max_abs_payoff(self):
        return float(max(np.abs(i).max() for i in self._payoffs))

    @max_abs_payoff.setter
    def max_abs_payoff(self, value):
        cannot_set(self.__class__.__name__, 'max_abs_payoff')


class PureProfile(object):
    def __init__(self, actions, action_counts):
        """
        One action index per player, each in [0, |A_i|)
        """
        self._actions = check_pure_profile(actions, action_counts)
        self._action_counts = tuple(action_counts)

    def __repr__(self):
        return f'<PureProfile {self._actions}>'

    def __eq__(self, other):
        if isinstance(other, PureProfile):
            return self._actions == other._actions
        return self._actions == tuple(other)

    def __hash__(self):
        return hash(self._actions)

    def __iter__(self):
        return iter(self._actions)

    def __len__(self):
        return len(self._actions)

    def __getitem__(self, item):
        return self._actions[item]

    def to_strategy_profile(self):
        return StrategyProfile.pure(self._actions, self._action_counts)

    @property
    def actions(self):
        return self._actions

    @actions.setter
    def actions(self, value):
        cannot_set(self.__class__.__name__, 'actions')


class StrategyProfile(object):
    def __init__(self, strategies):
        """
        One probability vector per player. Vectors within SIMPLEX_TOL of the simplex are divided by their sum,
        anything further away raises SimplexError.
        :param strategies: list[array-like]  -strategies[i] has length |A_i|
        """
        vecs = []
        for player, vec in enumerate(strategies):
            checked = check_simplex(vec, player)
            checked.flags.writeable = False
            vecs.append(checked)
        if not vecs:
            raise ShapeError('a strategy profile needs at least one player')
        self._strategies = tuple(vecs)

    @classmethod
    def uniform(cls, action_counts):
        return cls([np.full(m, 1.0 / m) for m in action_counts])

    @classmethod
    def pure(cls, actions, action_counts):
        actions = check_pure_profile(actions, action_counts)
        vecs = []
        for action, m in zip(actions, action_counts):
            vec = np.zeros(m)
            vec[action] = 1.0
            vecs.append(vec)
        return cls(vecs)

    def __repr__(self):
        body = ' | '.join('(' + ', '.join(f'{p:.3f}' for p in vec) + ')' for vec in self._strategies)
        return f'<StrategyProfile {body}>'

    def __len__(self):
        return len(self._strategies)

    def __getitem__(self, item):
        return self._strategies[item]

    def __iter__(self):
        return iter(self._strategies)

    def replace(self, player, vector):
        """
        Returns a new profile with player's strategy swapped for vector
        """
        vecs = list(self._strategies)
        vecs[player] = vector
        return StrategyProfile(vecs)

    def total_variation(self, other):
        """
        Largest per-player total-variation distance between two profiles of the same shape
        """
        return max(0.5 * float(np.abs(i - j).sum()) for i, j in zip(self._strategies, other.strategies))

    @property
    def strategies(self):
        return self._strategies

    @strategies.setter
    def strategies(self, value):
        cannot_set(self.__class__.__name__, 'strategies')

    @property
    def action_counts(self):
        return [len(i) for i in self._strategies]

    @action_counts.setter
    def action_counts(self, value):
        cannot_set(self.__class__.__name__, 'action_counts')


def _contract(tensor, strategies, keep=()):
    """
    Contracts every axis of tensor not in keep against the matching strategy vector, last axis first so the
    remaining axis positions never shift. Kept axes come back in their original order.
    """
    out = tensor
    for axis in range(tensor.ndim - 1, -1, -1):
        if axis in keep:
            continue
        out = np.tensordot(out, strategies[axis], axes=([axis], [0]))
    return out


def _checked(game, player, sigma, caller_name):
    game = check_game_arg(game, caller_name)
    sigma = check_profile_shape(check_profile_arg(sigma, caller_name), game.action_counts)
    if player is not None:
        player = check_player_index(player, game.num_players)
    return game, player, sigma


def pure_payoff(game, player, actions):
    """
    Returns the stored entry u_i(a) for a pure profile a (PureProfile or sequence of action indexes)
    """
    game = check_game_arg(game, 'pure_payoff')
    player = check_player_index(player, game.num_players)
    return float(game.payoffs[player][game.index(actions)])


def deviation_payoffs(game, player, sigma):
    """
    Returns the vector (u_i(a_i, sigma_-i)) over player i's actions. It never reads sigma_i.
    """
    game, player, sigma = _checked(game, player, sigma, 'deviation_payoffs')
    return _contract(game.tensors[player], sigma.strategies, keep=(player,))


def expected_utility(game, player, sigma):
    game, player, sigma = _checked(game, player, sigma, 'expected_utility')
    return float(_contract(game.tensors[player], sigma.strategies, keep=(player,)) @ sigma.strategies[player])


def best_response(game, player, sigma):
    """
    Returns (action, value) for the lowest-index pure best response of player against sigma_-i
    """
    dev = deviation_payoffs(game, player, sigma)
    action = int(np.argmax(dev))
    return action, float(dev[action])


def regrets(game, sigma):
    """
    Returns each player's gain from the best unilateral pure deviation, max_a u_i(a, sigma_-i) - u_i(sigma).
    Values below CLAMP_TOL in magnitude on the negative side are floating-point residue and read as 0.
    """
    game, _, sigma = _checked(game, None, sigma, 'regrets')
    out = np.empty(game.num_players)
    for i in range(game.num_players):
        dev = _contract(game.tensors[i], sigma.strategies, keep=(i,))
        out[i] = float(dev.max() - dev @ sigma.strategies[i])
    return clamp_residue(out)


def clamp_residue(values):
    """
    Floors values at zero. A regret can only be negative through rounding, which stays far inside CLAMP_TOL.
    """
    values = np.asarray(values, dtype=float)
    if np.any(values < -CLAMP_TOL * max(1.0, float(np.abs(values).max(initial=0.0)))):
        logger.debug('clamping negative residue %s', values.min())
    return np.maximum(values, 0.0)


def epsilon(game, sigma):
    """
    Returns the exploitability of sigma, the largest gain any single player gets by deviating.
    Zero exactly at a Nash equilibrium.
    """
    return float(regrets(game, sigma).max())


def normalize(game):
    """
    Maps every player's payoffs affinely onto [0, 1] independently. A constant tensor maps to all zeros.
    """
    game = check_game_arg(game, 'normalize')
    scaled = []
    for flat in game.payoffs:
        low, high = float(flat.min()), float(flat.max())
        if high == low:
            scaled.append(np.zeros_like(flat))
        else:
            scaled.append((flat - low) / (high - low))
    return NormalFormGame(game.action_counts, scaled, name=game.name, player_names=game.player_names)


def best_response_dynamics(game, start, max_steps: int = 10000):
    """
    Runs pure best-response dynamics from the start profile, letting players 1..N in turn switch to their
    lowest-index best response whenever it strictly improves on the current action.
    Returns (final PureProfile, steps taken, converged flag).
    """
    game = check_game_arg(game, 'best_response_dynamics')
    actions = list(check_pure_profile(start, game.action_counts))
    steps = 0
    while steps < max_steps:
        moved = False
        for i in range(game.num_players):
            slicer = tuple(slice(None) if j == i else a for j, a in enumerate(actions))
            row = game.tensors[i][slicer]
            choice = int(np.argmax(row))
            if row[choice] > row[actions[i]] + CLAMP_TOL:
                actions[i] = choice
                moved = True
                steps += 1
        if not moved:
            return PureProfile(actions, game.action_counts), steps, True
    logger.debug('best response dynamics stopped after %d steps without converging', steps)
    return PureProfile(actions, game.action_counts), steps, False
