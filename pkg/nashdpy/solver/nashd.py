"""
NashD distance, its subgradient through the softmax parameterization, and the gradient-descent solver.

For a profile sigma of an N-player game, NashD sums the max-terms max_a u_i(a, sigma_-i) of the zero-sum extension
(the original players plus one single-action player paid -sum_i u_i). The extra player's max-term is -sum_i u_i(sigma),
so on the original game

    NashD(sigma) = sum_i [max_a u_i(a, sigma_-i) - u_i(sigma)] = sum of per-player regrets

which is nonnegative and zero exactly at Nash equilibria. The fictitious player carries no logits.
"""

import logging
import time

import numpy as np
import pandas as pd
from nashdpy.game.game import (
    NormalFormGame,
    StrategyProfile,
    _contract,
    clamp_residue,
    normalize
)
from nashdpy.game.generators import make_rng, check_seed
from nashdpy.game._config import GD_DEFAULTS, TRACE_SERIES
from nashdpy.game._exceptions import (
    cannot_set,
    check_game_arg,
    check_profile_arg,
    check_profile_shape,
    check_report_mode,
    ConfigError,
    ShapeError
)

logger = logging.getLogger(__name__)


class LogitProfile(object):
    def __init__(self, logits):
        """
        One unconstrained real vector per player, the pre-softmax parameters of a StrategyProfile
        :param logits: list[array-like]     -logits[i] has length |A_i|
        """
        vecs = []
        for player, vec in enumerate(logits):
            arr = np.array(vec, dtype=float)
            if arr.ndim != 1 or arr.size == 0:
                raise ShapeError(f'logits for player {player} must be a non-empty vector')
            if not np.all(np.isfinite(arr)):
                raise ConfigError('logits', list(arr), f'for player {player} must be finite')
            arr.flags.writeable = False
            vecs.append(arr)
        self._logits = tuple(vecs)

    def __repr__(self):
        return f'<LogitProfile {[len(i) for i in self._logits]}>'

    def __len__(self):
        return len(self._logits)

    def __getitem__(self, item):
        return self._logits[item]

    def __iter__(self):
        return iter(self._logits)

    def to_strategy_profile(self):
        return StrategyProfile([softmax(i) for i in self._logits])

    @property
    def logits(self):
        return self._logits

    @logits.setter
    def logits(self, value):
        cannot_set(self.__class__.__name__, 'logits')

    @property
    def action_counts(self):
        return [len(i) for i in self._logits]

    @action_counts.setter
    def action_counts(self, value):
        cannot_set(self.__class__.__name__, 'action_counts')


class GdConfig(object):
    def __init__(self, max_iters: int = GD_DEFAULTS['max_iters'], initial_lr: float = GD_DEFAULTS['initial_lr'],
                 decay_factor: float = GD_DEFAULTS['decay_factor'], decay_every: int = GD_DEFAULTS['decay_every'],
                 seed: int = GD_DEFAULTS['seed'], early_stop_eps=GD_DEFAULTS['early_stop_eps'], report: str = GD_DEFAULTS['report']):
        """
        Hyperparameters for solve_nashd_gd. Defaults follow the experiment schedule: 1000 iterations, alpha 0.5 multiplied
        by 0.8 every 100 iterations, fixed length (no early stop), reporting the final iterate.
        :param max_iters: int               -Iteration budget T, at least 1
        :param initial_lr: float            -alpha, positive
        :param decay_factor: float          -Multiplier in (0, 1] applied every decay_every iterations
        :param decay_every: int             -Iterations between decays, positive
        :param seed: int                    -Unsigned seed for the standard-normal logit initialization
        :param early_stop_eps: float|None   -Stop as soon as an iterate's epsilon is at or below this value
        :param report: str                  -'final' or 'best', which profile SolveTrace.profile returns
        """
        if int(max_iters) < 1:
            raise ConfigError('max_iters', max_iters, 'must be at least 1')
        if not float(initial_lr) > 0:
            raise ConfigError('initial_lr', initial_lr, 'must be positive')
        if not 0 < float(decay_factor) <= 1:
            raise ConfigError('decay_factor', decay_factor, 'must lie in (0, 1]')
        if int(decay_every) < 1:
            raise ConfigError('decay_every', decay_every, 'must be a positive number of iterations')
        if early_stop_eps is not None and not float(early_stop_eps) >= 0:
            raise ConfigError('early_stop_eps', early_stop_eps, 'must be nonnegative')

        self._max_iters = int(max_iters)
        self._initial_lr = float(initial_lr)
        self._decay_factor = float(decay_factor)
        self._decay_every = int(decay_every)
        self._seed = check_seed(seed)
        self._early_stop_eps = None if early_stop_eps is None else float(early_stop_eps)
        self._report = check_report_mode(report)

    def __repr__(self):
        return (f'<GdConfig T={self._max_iters} | lr={self._initial_lr} x{self._decay_factor}/{self._decay_every} | '
                f'seed={self._seed} | report={self._report}>')

    def learning_rate(self, iteration):
        """
        alpha_t = initial_lr * decay_factor ** floor(t / decay_every)
        """
        return self._initial_lr * self._decay_factor ** (int(iteration) // self._decay_every)

    @staticmethod
    def lipschitz_step(game):
        """
        Returns 1 / L, the step size under which the descent bound holds, or inf for an all-zero game
        """
        bound = lipschitz_bound(game)
        return float('inf') if bound == 0 else 1.0 / bound

    @property
    def max_iters(self):
        return self._max_iters

    @max_iters.setter
    def max_iters(self, value):
        cannot_set(self.__class__.__name__, 'max_iters')

    @property
    def initial_lr(self):
        return self._initial_lr

    @initial_lr.setter
    def initial_lr(self, value):
        cannot_set(self.__class__.__name__, 'initial_lr')

    @property
    def decay_factor(self):
        return self._decay_factor

    @decay_factor.setter
    def decay_factor(self, value):
        cannot_set(self.__class__.__name__, 'decay_factor')

    @property
    def decay_every(self):
        return self._decay_every

    @decay_every.setter
    def decay_every(self, value):
        cannot_set(self.__class__.__name__, 'decay_every')

    @property
    def seed(self):
        return self._seed

    @seed.setter
    def seed(self, value):
        cannot_set(self.__class__.__name__, 'seed')

    @property
    def early_stop_eps(self):
        return self._early_stop_eps

    @early_stop_eps.setter
    def early_stop_eps(self, value):
        cannot_set(self.__class__.__name__, 'early_stop_eps')

    @property
    def report(self):
        return self._report

    @report.setter
    def report(self, value):
        cannot_set(self.__class__.__name__, 'report')


class SolveTrace(object):
    def __init__(self, iterations, nashd_values, epsilon_values, final_profile, final_epsilon,
                 best_profile, best_epsilon, wall_ms, report='final'):
        """
        Result of solve_nashd_gd: the per-iteration (iteration, NashD, epsilon) history plus the final and best-epsilon profiles
        """
        self._records_df = pd.DataFrame({
            'iteration': np.asarray(iterations, dtype=np.int64),
            'nashd': np.asarray(nashd_values, dtype=float),
            'epsilon': np.asarray(epsilon_values, dtype=float)
        }, columns=TRACE_SERIES)
        self._final_profile = final_profile
        self._final_epsilon = float(final_epsilon)
        self._best_profile = best_profile
        self._best_epsilon = float(best_epsilon)
        self._wall_ms = float(wall_ms)
        self._report = check_report_mode(report)

    def __repr__(self):
        return f'<SolveTrace {len(self._records_df)} iterations | final eps {self._final_epsilon:.3g} | best eps {self._best_epsilon:.3g}>'

    @property
    def records_df(self):
        return self._records_df

    @records_df.setter
    def records_df(self, value):
        cannot_set(self.__class__.__name__, 'records_df')

    @property
    def iterations(self):
        return len(self._records_df)

    @iterations.setter
    def iterations(self, value):
        cannot_set(self.__class__.__name__, 'iterations')

    @property
    def final_profile(self):
        return self._final_profile

    @final_profile.setter
    def final_profile(self, value):
        cannot_set(self.__class__.__name__, 'final_profile')

    @property
    def final_epsilon(self):
        return self._final_epsilon

    @final_epsilon.setter
    def final_epsilon(self, value):
        cannot_set(self.__class__.__name__, 'final_epsilon')

    @property
    def best_profile(self):
        return self._best_profile

    @best_profile.setter
    def best_profile(self, value):
        cannot_set(self.__class__.__name__, 'best_profile')

    @property
    def best_epsilon(self):
        return self._best_epsilon

    @best_epsilon.setter
    def best_epsilon(self, value):
        cannot_set(self.__class__.__name__, 'best_epsilon')

    @property
    def profile(self):
        return self._best_profile if self._report == 'best' else self._final_profile

    @profile.setter
    def profile(self, value):
        cannot_set(self.__class__.__name__, 'profile')

    @property
    def epsilon(self):
        return self._best_epsilon if self._report == 'best' else self._final_epsilon

    @epsilon.setter
    def epsilon(self, value):
        cannot_set(self.__class__.__name__, 'epsilon')

    @property
    def wall_ms(self):
        return self._wall_ms

    @wall_ms.setter
    def wall_ms(self, value):
        cannot_set(self.__class__.__name__, 'wall_ms')


class _NashDObjective(object):
    """
    Holds a game's tensors and the summed tensor sum_i u_i (the negated fictitious payoff) so one pass over the
    per-player deviation payoffs yields the regrets, NashD and the logit-space subgradient.
    """
    def __init__(self, game):
        self._tensors = game.tensors
        self._num_players = game.num_players
        self._total = np.sum(np.stack(self._tensors), axis=0)

    def regrets(self, strategies):
        out = np.empty(self._num_players)
        for i in range(self._num_players):
            dev = _contract(self._tensors[i], strategies, keep=(i,))
            out[i] = dev.max() - dev @ strategies[i]
        return clamp_residue(out)

    def evaluate(self, strategies):
        """
        Returns (regrets, gradient wrt the logits) at the profile strategies = softmax(z).
        Ties in argmax go to the lowest action index.
        """
        n = self._num_players
        grad = [np.zeros(len(s)) for s in strategies]
        regret = np.empty(n)
        for i in range(n):
            dev = _contract(self._tensors[i], strategies, keep=(i,))
            best = int(np.argmax(dev))
            regret[i] = dev[best] - dev @ strategies[i]
            if n == 1:
                continue
            # d/d sigma_j of max_l u_i(l, sigma_-i) for j != i is u_i(l*, a_j, sigma_-(i,j))
            fixed = np.take(self._tensors[i], best, axis=i)
            others = [s for j, s in enumerate(strategies) if j != i]
            for pos, j in enumerate(j for j in range(n) if j != i):
                grad[j] += _contract(fixed, others, keep=(pos,))
        for j in range(n):
            grad[j] -= _contract(self._total, strategies, keep=(j,))
            # softmax Jacobian: d sigma_k / d z_m = sigma_k (delta_km - sigma_m)
            grad[j] = strategies[j] * (grad[j] - grad[j] @ strategies[j])
        return clamp_residue(regret), grad


def _as_logits(z):
    if not isinstance(z, LogitProfile):
        z = LogitProfile(z)
    return z


def zero_sum_extend(game):
    """
    Returns the N+1 player game with an added single-action player paid -sum_i u_i(a) at every pure profile
    """
    game = check_game_arg(game, 'zero_sum_extend')
    fictitious = -np.sum(np.stack(game.payoffs), axis=0)
    payoffs = game.payoffs + [fictitious]
    return NormalFormGame(game.action_counts + [1], payoffs, name=f'{game.name} (zero-sum extension)'.strip(),
                          player_names=game.player_names + ['Fictitious'])


def softmax(logits):
    """
    Maps a finite real vector onto the simplex, exp(z_k) / sum exp(z); shifting z by a constant changes nothing
    """
    z = np.asarray(logits, dtype=float)
    e = np.exp(z - z.max())
    return e / e.sum()


def nashd(game, sigma):
    """
    NashD of a profile of the ORIGINAL game, computed as the sum of per-player regrets
    """
    game = check_game_arg(game, 'nashd')
    sigma = check_profile_shape(check_profile_arg(sigma, 'nashd'), game.action_counts)
    return float(_NashDObjective(game).regrets(sigma.strategies).sum())


def nashd_zero_sum_form(game, sigma):
    """
    NashD evaluated literally as sum_{i <= N+1} max_a u_i(a, sigma_-i) on zero_sum_extend(game)
    """
    game = check_game_arg(game, 'nashd_zero_sum_form')
    sigma = check_profile_shape(check_profile_arg(sigma, 'nashd_zero_sum_form'), game.action_counts)
    extended = zero_sum_extend(game)
    strategies = list(sigma.strategies) + [np.ones(1)]
    return float(sum(_contract(extended.tensors[i], strategies, keep=(i,)).max() for i in range(extended.num_players)))


def nashd_subgradient(game, z):
    """
    Returns the subgradient of NashD(softmax(z)) with respect to the logits z, shaped like z
    """
    game = check_game_arg(game, 'nashd_subgradient')
    z = _as_logits(z)
    if z.action_counts != game.action_counts:
        raise ShapeError(f'logit action counts {z.action_counts} do not match game action counts {game.action_counts}')
    _, grad = _NashDObjective(game).evaluate([softmax(i) for i in z])
    return LogitProfile(grad)


def lipschitz_bound(game):
    """
    L = 2 * U * N * sum_i |A_i| with U the largest absolute payoff, on the original game (the fictitious player has no parameters)
    """
    game = check_game_arg(game, 'lipschitz_bound')
    return 2.0 * game.max_abs_payoff * game.num_players * sum(game.action_counts)


def solve_nashd_gd(game, config=None):
    """
    Gradient descent on NashD over softmax logits.

    The game is normalized to [0, 1] first. Logits start i.i.d. standard normal from config.seed, drawn player by player.
    Each iteration t records NashD and epsilon of sigma_t = softmax(z_t), then steps z_{t+1} = z_t - alpha_t * grad.
    The final profile is softmax(z_T), or sigma_t when early stopping triggers at iteration t.
    """
    config = GdConfig() if config is None else config
    game = normalize(check_game_arg(game, 'solve_nashd_gd'))
    start = time.perf_counter()

    rng = make_rng(config.seed)
    z = [rng.standard_normal(m) for m in game.action_counts]
    objective = _NashDObjective(game)

    iterations, nashd_values, epsilon_values = [], [], []
    best_eps, best_strategies = float('inf'), None
    final_strategies, final_eps = None, None

    for t in range(config.max_iters):
        strategies = [softmax(i) for i in z]
        regret, grad = objective.evaluate(strategies)
        value, eps = float(regret.sum()), float(regret.max())
        iterations.append(t)
        nashd_values.append(value)
        epsilon_values.append(eps)
        if eps < best_eps:
            best_eps, best_strategies = eps, strategies

        if t % config.decay_every == 0:
            logger.debug('iteration %d | nashd %.6g | epsilon %.6g | lr %.4g', t, value, eps, config.learning_rate(t))

        if config.early_stop_eps is not None and eps <= config.early_stop_eps:
            final_strategies, final_eps = strategies, eps
            break

        lr = config.learning_rate(t)
        z = [zi - lr * gi for zi, gi in zip(z, grad)]

    if final_strategies is None:
        final_strategies = [softmax(i) for i in z]
        final_eps = float(objective.regrets(final_strategies).max())
        if final_eps < best_eps:
            best_eps, best_strategies = final_eps, final_strategies

    wall_ms = (time.perf_counter() - start) * 1000
    logger.info('nashd_gd finished %s | %d iterations | final epsilon %.6g | best epsilon %.6g | %.1f ms',
                game.name, len(iterations), final_eps, best_eps, wall_ms)

    return SolveTrace(iterations, nashd_values, epsilon_values,
                      StrategyProfile(final_strategies), final_eps,
                      StrategyProfile(best_strategies), best_eps,
                      wall_ms, report=config.report)
