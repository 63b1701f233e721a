"""
Command line front end: solve, generate, bench and trace.

Exit codes are 0 on success, 1 for input errors (bad files, bad flags, out-of-range sizes) and 2 when a game would
exceed the dense payoff capacity.
"""

import argparse
import logging
import os
import sys

from nashdpy.bench.bench import Bench, output_nashd, run_algorithm
from nashdpy.game.generators import GameSpec
from nashdpy.nfg.nfg import load_nfg, load_profile, save_nfg
from nashdpy.nfg.nfg_exceptions import NfgImportError
from nashdpy.solver.nashd import GdConfig
from nashdpy.game._config import (
    ALGORITHMS,
    BENCH_ALGORITHMS,
    BENCH_DEFAULTS,
    BENCH_PRESETS,
    GAME_CLASSES,
    GD_DEFAULTS,
    PLAY_DEFAULTS,
    REPORT_MODES
)
from nashdpy.game._exceptions import (
    ActionCountError,
    ActionIndexError,
    AlgorithmError,
    CapacityError,
    ConfigError,
    GameClassError,
    PayoffError,
    PlayerCountError,
    PlayerIndexError,
    ProfileFileError,
    ShapeError,
    SimplexError
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPACITY = 2

INPUT_ERRORS = (
    ActionCountError,
    ActionIndexError,
    AlgorithmError,
    ConfigError,
    GameClassError,
    NfgImportError,
    OSError,
    PayoffError,
    PlayerCountError,
    PlayerIndexError,
    ProfileFileError,
    ShapeError,
    SimplexError
)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors and exit 1"""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f'{self.prog}: error: {message}\n')


def _int_list(text):
    """
    Parses '3', '2-6' or '2,4,6' into a tuple of ints
    """
    try:
        if '-' in text:
            low, high = (int(i) for i in text.split('-', 1))
            return tuple(range(low, high + 1))
        return tuple(int(i) for i in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'[{text}] is not an integer, a range low-high or a comma list')


def _name_list(valid):
    def parse(text):
        names = tuple(i.strip().lower().replace('-', '_') for i in text.split(',') if i.strip())
        bad = [i for i in names if i not in valid]
        if bad or not names:
            raise argparse.ArgumentTypeError(f'[{text}] must be a comma list drawn from {", ".join(valid)}')
        return names
    return parse


def _add_game_args(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--game', metavar='PATH', help='payoff-version .nfg file')
    source.add_argument('--class', dest='game_class', choices=list(GAME_CLASSES), help='generated game class')
    parser.add_argument('--players', type=int, help='players of the generated game')
    parser.add_argument('--actions', type=int, default=2, help='actions per player of the generated game (default 2)')
    parser.add_argument('--seed', type=int, default=0, help='generator seed (default 0)')


def _add_gd_schedule_args(parser):
    parser.add_argument('--iters', type=int, default=GD_DEFAULTS['max_iters'], help='nashd_gd iterations T')
    parser.add_argument('--lr', type=float, default=GD_DEFAULTS['initial_lr'], help='nashd_gd initial learning rate')
    parser.add_argument('--decay', type=float, default=GD_DEFAULTS['decay_factor'], help='nashd_gd decay factor')
    parser.add_argument('--decay-every', type=int, default=GD_DEFAULTS['decay_every'], help='iterations between decays')
    parser.add_argument('--rounds', type=int, default=PLAY_DEFAULTS['rounds'], help='fp and rm rounds')


def _add_solver_args(parser):
    parser.add_argument('--alg', required=True, choices=list(ALGORITHMS), help='algorithm')
    parser.add_argument('--profile', metavar='PATH', help='strategy profile file scored by --alg external')
    parser.add_argument('--solver-seed', type=int, default=GD_DEFAULTS['seed'], help='seed of the logit initialization and the baselines')
    parser.add_argument('--early-stop', type=float, default=GD_DEFAULTS['early_stop_eps'], help='stop once epsilon is at or below this value')
    parser.add_argument('--report', choices=REPORT_MODES, default=GD_DEFAULTS['report'], help='report the final or the best iterate')
    _add_gd_schedule_args(parser)


def build_parser():
    parser = _ArgumentParser(prog='nashdpy', description='Approximate Nash equilibria by gradient descent on NashD.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO logs, -vv for DEBUG')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    solve = commands.add_parser('solve', help='solve one game and print one result line')
    _add_game_args(solve)
    _add_solver_args(solve)
    solve.set_defaults(handler=cmd_solve, command_parser=solve)
    solve.add_argument('--trace', metavar='PATH', help='also write the trace CSV')
    solve.add_argument('--every', type=int, default=PLAY_DEFAULTS['sample_every'], help='fp and rm trace sampling interval')

    generate = commands.add_parser('generate', help='write a generated game as .nfg')
    generate.add_argument('--class', dest='game_class', required=True, choices=list(GAME_CLASSES), help='game class')
    generate.add_argument('--players', type=int, required=True, help='players')
    generate.add_argument('--actions', type=int, default=2, help='actions per player (default 2)')
    generate.add_argument('--seed', type=int, default=0, help='generator seed (default 0)')
    generate.add_argument('-o', '--output', required=True, metavar='PATH', help='file to write, must end in .nfg')
    generate.set_defaults(handler=cmd_generate, command_parser=generate)

    bench = commands.add_parser('bench', help='run a benchmark grid and write record and summary CSVs')
    bench.add_argument('--preset', choices=list(BENCH_PRESETS), help='named grid, overrides --classes/--players/--actions')
    bench.add_argument('--classes', type=_name_list(list(GAME_CLASSES)), default=BENCH_DEFAULTS['classes'], help='comma list of classes')
    bench.add_argument('--players', type=_int_list, default=BENCH_DEFAULTS['players'], help='players, e.g. 3, 2-6 or 2,4')
    bench.add_argument('--actions', type=_int_list, default=BENCH_DEFAULTS['actions'], help='actions per player, e.g. 10 or 2-10')
    bench.add_argument('--seeds', type=int, help=f'replicates per cell (default {BENCH_DEFAULTS["seeds"]})')
    bench.add_argument('--algs', type=_name_list(list(BENCH_ALGORITHMS)), help='comma list of algorithms (default nashd_gd,fp,rm)')
    bench.add_argument('--base-seed', type=int, default=BENCH_DEFAULTS['base_seed'], help='seed base of the derived replicate seeds')
    bench.add_argument('--workers', type=int, default=BENCH_DEFAULTS['workers'], help='worker processes')
    bench.add_argument('--no-timing', action='store_true', help='write wall_ms as 0.0 for byte-identical record CSVs')
    bench.add_argument('--quiet', action='store_true', help='hide the progress bar')
    bench.add_argument('--report', action='store_true', help='print the summary table')
    bench.add_argument('-o', '--output', required=True, metavar='RECORDS.csv', help='record CSV')
    bench.add_argument('--summary', metavar='SUMMARY.csv', help='summary CSV (default <records>_summary.csv)')
    _add_gd_schedule_args(bench)
    bench.set_defaults(handler=cmd_bench, command_parser=bench)

    trace = commands.add_parser('trace', help='write the per-iteration trace CSV of one solve')
    _add_game_args(trace)
    _add_solver_args(trace)
    trace.add_argument('--every', type=int, default=1, help='fp and rm sampling interval (default every round)')
    trace.add_argument('-o', '--output', required=True, metavar='TRACE.csv', help='trace CSV')
    trace.set_defaults(handler=cmd_trace, command_parser=trace)
    return parser


def _load_game(args, parser):
    if args.game is not None:
        return load_nfg(args.game)
    if args.players is None:
        parser.error('--class needs --players')
    return GameSpec(args.game_class, args.players, args.actions, args.seed).build()


def _gd_config(args):
    return GdConfig(max_iters=args.iters, initial_lr=args.lr, decay_factor=args.decay, decay_every=args.decay_every,
                    seed=args.solver_seed,
                    early_stop_eps=args.early_stop, report=args.report)


def _solve(args, parser):
    game = _load_game(args, parser)
    profile = None
    if args.alg == 'external':
        if args.profile is None:
            parser.error('--alg external needs --profile')
        profile = load_profile(args.profile, game)
    trace = run_algorithm(game, args.alg, _gd_config(args), rounds=args.rounds, seed=args.solver_seed,
                          sample_every=args.every, profile=profile)
    return game, trace


def cmd_solve(args, parser):
    game, trace = _solve(args, parser)
    print(f'algorithm={args.alg} epsilon={trace.epsilon!r} nashd={output_nashd(game, trace)!r} '
          f'iterations={trace.iterations} wall_ms={trace.wall_ms:.3f}')
    if args.trace is not None:
        trace.records_df.to_csv(args.trace, index=False)
        logger.info('wrote %d trace rows to %s', len(trace.records_df), args.trace)
    return EXIT_OK


def cmd_generate(args, parser):
    game = GameSpec(args.game_class, args.players, args.actions, args.seed).build()
    save_nfg(game, args.output)
    return EXIT_OK


def cmd_bench(args, parser):
    kwargs = {
        'base_seed': args.base_seed,
        'gd_config': GdConfig(max_iters=args.iters, initial_lr=args.lr, decay_factor=args.decay, decay_every=args.decay_every),
        'rounds': args.rounds,
        'timing': not args.no_timing
    }
    if args.seeds is not None:
        kwargs['seeds'] = args.seeds
    if args.algs is not None:
        kwargs['algorithms'] = args.algs

    if args.preset is not None:
        bench = Bench.from_preset(args.preset, **kwargs)
    else:
        bench = Bench.from_grid(args.classes, args.players, args.actions, **kwargs)

    bench.run(workers=args.workers, progress=not args.quiet)
    summary = args.summary if args.summary is not None else f'{os.path.splitext(args.output)[0]}_summary.csv'
    bench.to_csv(args.output, summary)
    if args.report:
        bench.console_report()
    return EXIT_OK


def cmd_trace(args, parser):
    _, trace = _solve(args, parser)
    trace.records_df.to_csv(args.output, index=False)
    logger.info('wrote %d trace rows to %s', len(trace.records_df), args.output)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO,
                            format='%(asctime)s %(name)s %(levelname)s %(message)s')

    try:
        return args.handler(args, args.command_parser)
    except SystemExit as err:
        return err.code
    except CapacityError as err:
        sys.stderr.write(f'{str(err).strip()}\n')
        return EXIT_CAPACITY
    except INPUT_ERRORS as err:
        sys.stderr.write(f'{str(err).strip()}\n')
        return EXIT_INPUT
