SIMPLEX_TOL = 1e-9
CLAMP_TOL = 1e-12

# dense payoff entries allowed in one game (players * pure profiles)
MAX_GAME_ENTRIES = 10 ** 8

CI95_Z = 1.96

CSV_SCHEMA_VERSION = 1

RECORD_SERIES = ['game_class', 'n_players', 'n_actions', 'game_size', 'seed', 'algorithm', 'epsilon', 'iterations', 'wall_ms']

SUMMARY_SERIES = ['game_class', 'game_size', 'algorithm', 'mean_epsilon', 'ci95_halfwidth', 'count']

TRACE_SERIES = ['iteration', 'nashd', 'epsilon']


# GRADIENT DESCENT DEFAULTS -- T=1000, alpha=0.5, decayed by 0.8 every 100 iterations
GD_DEFAULTS = {
    'max_iters': 1000,
    'initial_lr': 0.5,
    'decay_factor': 0.8,
    'decay_every': 100,
    'seed': 0,
    'early_stop_eps': None,
    'report': 'final'
}

PLAY_DEFAULTS = {
    'rounds': 1000,
    'sample_every': 10,
    'seed': 0
}

REPORT_MODES = ('final', 'best')


# ALGORITHM CODE AND ALGORITHM NAME
ALGORITHMS = {
    'nashd_gd': 'NASHD GRADIENT DESCENT',
    'fp': 'FICTITIOUS PLAY',
    'rm': 'REGRET MATCHING',
    'external': 'EXTERNAL PROFILE'
}

BENCH_ALGORITHMS = ('nashd_gd', 'fp', 'rm')


# GAME CLASS CODE AND GAME CLASS NAME
GAME_CLASSES = {
    'random': 'RANDOM UNIFORM',
    'prisoners_dilemma_n': 'N-PLAYER PRISONERS DILEMMA',
    'majority_voting': 'MAJORITY VOTING',
    'congestion': 'CONGESTION',
    'coordination': 'COORDINATION'
}

# SORTING HELPERS FOR CSV ROWS
CLASS_SORT = {
    'random': 0,
    'prisoners_dilemma_n': 1,
    'majority_voting': 2,
    'congestion': 3,
    'coordination': 4,
    'external': 5
}

ALGORITHM_SORT = {
    'nashd_gd': 0,
    'fp': 1,
    'rm': 2,
    'external': 3
}

# GENERATOR BOUNDS -- (min players, max players or None, min actions)
CLASS_BOUNDS = {
    'random': (1, None, 2),
    'prisoners_dilemma_n': (2, 20, 2),
    'majority_voting': (3, None, 2),
    'congestion': (2, None, 2),
    'coordination': (2, None, 2)
}

# PRISONERS DILEMMA -- benefit received per cooperating opponent and cost of cooperating
PD_BENEFIT = 1.0
PD_COST = 0.4

# CONGESTION -- facility cost slope drawn from Uniform[low, high]
CONGESTION_SLOPE = (0.1, 1.0)


"""
Benchmark presets -- key: value -> {preset name: grid}
'cells' is a list of (game class, players, actions) tuples. When players or actions is a (low, high) tuple
the size is drawn per replicate from the inclusive range using the replicate seed.
"""

BENCH_PRESETS = {
    'size_sweep': {
        'cells': [('random', 2, 3)] + [('random', n, 10) for n in range(2, 7)],
        'algorithms': ('nashd_gd', 'fp', 'rm'),
        'seeds': 100
    },
    'robustness': {
        'cells': [('random', n, m) for n in range(3, 7) for m in range(2, 11)],
        'algorithms': ('nashd_gd',),
        'seeds': 100
    },
    'classes_two_player': {
        'cells': [(cls, 2, (2, 5)) for cls in ('random', 'prisoners_dilemma_n', 'congestion', 'coordination')],
        'algorithms': ('nashd_gd', 'fp', 'rm'),
        'seeds': 100
    },
    'classes_n_player': {
        'cells': [(cls, (3, 5), (3, 5)) for cls in GAME_CLASSES],
        'algorithms': ('nashd_gd', 'fp', 'rm'),
        'seeds': 100
    }
}

RECORD_TYPES = {
    'game_class': str,
    'n_players': 'int64',
    'n_actions': 'int64',
    'game_size': 'int64',
    'seed': 'int64',
    'algorithm': str,
    'epsilon': float,
    'iterations': 'int64',
    'wall_ms': float
}

BENCH_DEFAULTS = {
    'classes': ('random',),
    'players': (2, 3, 4, 5, 6),
    'actions': (10,),
    'seeds': 100,
    'base_seed': 0,
    'workers': 1
}

# cell seeds are blake2b digests of the cell key, reduced to 63 bits so they fit a signed int64 CSV column
SEED_DIGEST_SIZE = 8
SEED_MASK = 2 ** 63 - 1
