"""
Benchmark grids over generated games.

A grid is a list of cells (game class, players, actions); each cell is run for `seeds` replicates and every replicate
game is solved by every algorithm, giving one record per (cell, replicate, algorithm).

Replicate seeds are derived, never drawn, so re-running one cell reproduces its rows without disturbing any other:

    key  = f'{base_seed}|{class}|{players}|{actions}|{replicate}'
    seed = int.from_bytes(blake2b(key, digest_size=8), 'little') & (2**63 - 1)

A ranged players or actions value (low, high) renders as 'low-high' in the key and the concrete size is then drawn from
make_rng(seed), players first. The same seed generates the game and initializes the NashD logits.
"""

import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from functools import wraps
from itertools import product

import numpy as np
import pandas as pd
from tqdm import tqdm

from nashdpy.report.report import Report
from nashdpy.game.game import normalize, regrets
from nashdpy.game.generators import GameSpec, check_seed, make_rng
from nashdpy.solver.baselines import PlayTrace, solve_fictitious_play, solve_regret_matching
from nashdpy.solver.nashd import GdConfig, solve_nashd_gd
from nashdpy.game._config import (
    ALGORITHM_SORT,
    BENCH_ALGORITHMS,
    BENCH_DEFAULTS,
    BENCH_PRESETS,
    CI95_Z,
    CLASS_SORT,
    PLAY_DEFAULTS,
    RECORD_SERIES,
    RECORD_TYPES,
    SEED_DIGEST_SIZE,
    SEED_MASK,
    SUMMARY_SERIES
)
from nashdpy.game._exceptions import (
    cannot_set,
    check_algorithm,
    check_game_class,
    ConfigError
)

logger = logging.getLogger(__name__)


def timed(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        now = time.perf_counter()
        x = func(*args, **kwargs)
        after = time.perf_counter()
        logger.debug('%s took %.5f seconds', func.__name__, after - now)
        return x
    return wrapper


def score_profile(game, profile):
    """
    Scores an externally computed StrategyProfile on the normalized game, returned as a one-row PlayTrace
    """
    start = time.perf_counter()
    regret = regrets(normalize(game), profile)
    wall_ms = (time.perf_counter() - start) * 1000
    eps = float(regret.max())
    return PlayTrace([0], [float(regret.sum())], [eps], profile, eps, wall_ms, 0)


def run_algorithm(game, algorithm, gd_config=None, rounds=PLAY_DEFAULTS['rounds'], seed=PLAY_DEFAULTS['seed'],
                  sample_every=PLAY_DEFAULTS['sample_every'], profile=None):
    """
    Runs one algorithm on a game and returns its trace, a SolveTrace for nashd_gd and a PlayTrace otherwise.
    :param game: NormalFormGame          -The game to solve, normalized by the solvers
    :param algorithm: str                -nashd_gd, fp, rm or external
    :param gd_config: GdConfig           -NashD settings, the default schedule when None
    :param rounds: int                   -Rounds for fp and rm
    :param seed: int                     -Seed for fp and rm
    :param sample_every: int             -Trace sampling interval for fp and rm
    :param profile: StrategyProfile      -The profile scored by the external algorithm
    """
    algorithm = check_algorithm(algorithm)
    if algorithm == 'nashd_gd':
        return solve_nashd_gd(game, gd_config)
    elif algorithm == 'fp':
        return solve_fictitious_play(game, rounds, seed, sample_every)
    elif algorithm == 'rm':
        return solve_regret_matching(game, rounds, seed, sample_every)
    else:
        if profile is None:
            raise ConfigError('profile', profile, 'is required by the external algorithm')
        return score_profile(game, profile)


def output_nashd(game, trace):
    """
    NashD of a trace's reported profile on the normalized game
    """
    return float(regrets(normalize(game), trace.profile).sum())


def _render(value):
    return f'{value[0]}-{value[1]}' if isinstance(value, tuple) else str(value)


def derive_seed(base_seed: int, class_name: str, players, actions, replicate: int):
    key = '|'.join([str(check_seed(base_seed)), class_name, _render(players), _render(actions), str(int(replicate))])
    digest = hashlib.blake2b(key.encode('utf-8'), digest_size=SEED_DIGEST_SIZE).digest()
    return int.from_bytes(digest, 'little') & SEED_MASK


def _draw(value, rng):
    if isinstance(value, tuple):
        low, high = value
        return int(rng.integers(low, high + 1))
    return int(value)


def _check_size(value, label):
    if isinstance(value, (tuple, list)):
        low, high = (int(i) for i in value)
        if low > high:
            raise ConfigError(label, value, 'range must run from low to high')
        return low, high
    return int(value)


def _corners(value):
    return value if isinstance(value, tuple) else (value, value)


def _check_cell(cell):
    class_name, players, actions = cell
    class_name = check_game_class(class_name)
    players, actions = _check_size(players, 'players'), _check_size(actions, 'actions')
    (p_low, p_high), (a_low, a_high) = _corners(players), _corners(actions)
    GameSpec(class_name, p_low, a_low)
    GameSpec(class_name, p_high, a_high)
    return class_name, players, actions


def _gd_kwargs(config):
    return {
        'max_iters': config.max_iters,
        'initial_lr': config.initial_lr,
        'decay_factor': config.decay_factor,
        'decay_every': config.decay_every,
        'early_stop_eps': config.early_stop_eps,
        'report': config.report
    }


def _run_replicate(job):
    """
    Builds one replicate game and runs every algorithm on it. Returns a list of (sort key, record Series).
    Module level so process pools can pickle it.
    """
    cell_index, replicate, (class_name, players, actions), seed, algorithms, gd_kwargs, rounds, timing = job
    rng = make_rng(seed)
    spec = GameSpec(class_name, _draw(players, rng), _draw(actions, rng), seed)
    game = spec.build()

    out = []
    for alg in algorithms:
        trace = run_algorithm(game, alg, GdConfig(seed=seed, **gd_kwargs), rounds=rounds, seed=seed, sample_every=rounds)
        row = pd.Series([class_name, spec.num_players, spec.actions_per_player, spec.game_size, seed, alg,
                         trace.epsilon, trace.iterations, trace.wall_ms if timing else 0.0], index=RECORD_SERIES)
        logger.debug('%s | %s | epsilon %.6g', spec, alg, trace.epsilon)
        out.append(((cell_index, replicate, ALGORITHM_SORT[alg]), row))
    return out


class Bench(object):
    def __init__(self, cells, algorithms=BENCH_ALGORITHMS, seeds: int = BENCH_DEFAULTS['seeds'],
                 base_seed: int = BENCH_DEFAULTS['base_seed'], gd_config=None, rounds: int = PLAY_DEFAULTS['rounds'],
                 timing: bool = True, name: str = ''):
        """
        The Bench Class runs a grid of generated games through the solvers and tabulates the results.

        records_df holds one row per (cell, replicate, algorithm) in RECORD_SERIES columns, summary_df one row per
        (game class, game size, algorithm) with the mean epsilon and its 0.95 normal-approximation half-width.

        :param cells: list                  -(game class, players, actions) tuples, players/actions int or (low, high)
        :param algorithms: list[str]        -Algorithms run on every replicate, external is not allowed
        :param seeds: int                   -Replicates per cell
        :param base_seed: int               -Seed base for derive_seed
        :param gd_config: GdConfig          -NashD schedule, its seed is replaced by each replicate seed
        :param rounds: int                  -Rounds for fp and rm
        :param timing: bool                 -When False wall_ms is written as 0.0 so record CSVs are byte-identical across runs
        :param name: str                    -Label for logs and progress bars
        """
        self._cells = [_check_cell(i) for i in cells]
        if not self._cells:
            raise ConfigError('cells', cells, 'must name at least one cell')
        self._algorithms = tuple(check_algorithm(i) for i in algorithms)
        if not self._algorithms or 'external' in self._algorithms:
            raise ConfigError('algorithms', list(algorithms), f'must be drawn from {", ".join(BENCH_ALGORITHMS)}')
        if int(seeds) < 1:
            raise ConfigError('seeds', seeds, 'must be a positive number of replicates')
        if int(rounds) < 1:
            raise ConfigError('rounds', rounds, 'must be a positive integer')
        self._seeds = int(seeds)
        self._base_seed = check_seed(base_seed)
        self._gd_config = GdConfig() if gd_config is None else gd_config
        self._rounds = int(rounds)
        self._timing = bool(timing)
        self._name = name.upper()

        self._records = []
        self._records_df = None
        self._summary_df = None
        self._report = None

    def __repr__(self):
        return f'<Bench {self._name} | {len(self._cells)} cells | {self._seeds} seeds | {", ".join(self._algorithms)}>'

    @classmethod
    def from_preset(cls, preset: str, **kwargs):
        """
        Builds a Bench from one of the BENCH_PRESETS grids; keyword arguments override the preset's algorithms and seeds
        """
        if preset not in BENCH_PRESETS:
            raise ConfigError('preset', preset, f'must be one of {", ".join(BENCH_PRESETS)}')
        grid = BENCH_PRESETS[preset]
        kwargs.setdefault('algorithms', grid['algorithms'])
        kwargs.setdefault('seeds', grid['seeds'])
        kwargs.setdefault('name', preset)
        return cls(grid['cells'], **kwargs)

    @classmethod
    def from_grid(cls, classes, players, actions, **kwargs):
        """
        Builds a Bench over the full product classes x players x actions
        """
        return cls(list(product(classes, players, actions)), **kwargs)

    def _jobs(self):
        gd_kwargs = _gd_kwargs(self._gd_config)
        for cell_index, (class_name, players, actions) in enumerate(self._cells):
            logger.info('cell %s | players %s | actions %s | %d seeds', class_name, _render(players), _render(actions), self._seeds)
            for replicate in range(self._seeds):
                seed = derive_seed(self._base_seed, class_name, players, actions, replicate)
                yield (cell_index, replicate, (class_name, players, actions), seed, self._algorithms, gd_kwargs,
                       self._rounds, self._timing)

    @timed
    def run(self, workers: int = BENCH_DEFAULTS['workers'], progress: bool = True):
        """
        Runs every replicate, in a process pool when workers > 1. Rows are sorted canonically by cell, replicate and
        algorithm whatever the completion order.
        """
        if int(workers) < 1:
            raise ConfigError('workers', workers, 'must be a positive integer')
        jobs = list(self._jobs())
        results = []
        with tqdm(total=len(jobs), desc=self._name.lower() or 'bench', unit='game', disable=not progress) as bar:
            if int(workers) == 1:
                for job in jobs:
                    results.extend(_run_replicate(job))
                    bar.update()
            else:
                with ProcessPoolExecutor(max_workers=int(workers)) as pool:
                    futures = [pool.submit(_run_replicate, job) for job in jobs]
                    for future in as_completed(futures):
                        results.extend(future.result())
                        bar.update()

        self._records = [row for _, row in sorted(results, key=lambda x: x[0])]
        self._set_dataframes()
        return self

    def _set_dataframes(self):
        self._set_records_df()
        self._set_summary_df()
        self._report = Report(self)

    def _set_records_df(self):
        """
        This DataFrame is a collection of the record Series, transposed so that the Series' indexes become the columns
        """
        self._records_df = pd.DataFrame(self._records, columns=RECORD_SERIES).reset_index(drop=True).astype(RECORD_TYPES)

    def _set_summary_df(self):
        """
        This DataFrame groups the records by game class, game size and algorithm. The half-width is
        CI95_Z * sd / sqrt(n) with the sample standard deviation, and 0 for a single record.
        """
        grouped = self._records_df.groupby(by=['game_class', 'game_size', 'algorithm'], sort=False)['epsilon']
        df = grouped.agg(['mean', 'std', 'count']).reset_index()
        df['mean_epsilon'] = df['mean']
        df['ci95_halfwidth'] = (CI95_Z * df['std'] / np.sqrt(df['count'])).fillna(0.0)
        df['class_sort'] = df['game_class'].map(CLASS_SORT)
        df['algorithm_sort'] = df['algorithm'].map(ALGORITHM_SORT)
        df = df.sort_values(by=['class_sort', 'game_size', 'algorithm_sort'], kind='mergesort')
        self._summary_df = df[SUMMARY_SERIES].reset_index(drop=True).astype({'count': 'int64'})

    def _check_ran(self, caller_name):
        if self._records_df is None:
            raise ConfigError('records', None, f'are empty, call Bench.run before Bench.{caller_name}')

    @timed
    def to_csv(self, records_path, summary_path=None):
        """
        Writes the record CSV and, when a path is given, the summary CSV
        """
        self._check_ran('to_csv')
        self._records_df.to_csv(records_path, index=False)
        logger.info('wrote %d records to %s', len(self._records_df), records_path)
        if summary_path is not None:
            self._summary_df.to_csv(summary_path, index=False)
            logger.info('wrote %d summary rows to %s', len(self._summary_df), summary_path)

    def console_report(self):
        self._check_ran('console_report')
        self._report.console_report()

    @property
    def cells(self):
        return list(self._cells)

    @cells.setter
    def cells(self, value):
        cannot_set(self.__class__.__name__, 'cells')

    @property
    def algorithms(self):
        return self._algorithms

    @algorithms.setter
    def algorithms(self, value):
        cannot_set(self.__class__.__name__, 'algorithms')

    @property
    def seeds(self):
        return self._seeds

    @seeds.setter
    def seeds(self, value):
        cannot_set(self.__class__.__name__, 'seeds')

    @property
    def base_seed(self):
        return self._base_seed

    @base_seed.setter
    def base_seed(self, value):
        cannot_set(self.__class__.__name__, 'base_seed')

    @property
    def name(self):
        return self._name

    @name.setter
    def name(self, value):
        cannot_set(self.__class__.__name__, 'name')

    @property
    def records_df(self):
        return self._records_df

    @records_df.setter
    def records_df(self, value):
        cannot_set(self.__class__.__name__, 'records_df')

    @property
    def summary_df(self):
        return self._summary_df

    @summary_df.setter
    def summary_df(self, value):
        cannot_set(self.__class__.__name__, 'summary_df')
