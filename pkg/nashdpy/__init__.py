from nashdpy.game.game import NormalFormGame, PureProfile, StrategyProfile, epsilon, normalize
from nashdpy.game.generators import GameSpec
from nashdpy.solver.nashd import GdConfig, nashd, solve_nashd_gd
from nashdpy.solver.baselines import solve_fictitious_play, solve_regret_matching
from nashdpy.nfg.nfg import load_nfg, parse_nfg, save_nfg, serialize_nfg
from nashdpy.bench.bench import Bench
