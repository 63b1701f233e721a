import pandas as pd
import pytest

from nashdpy.bench.cli import EXIT_CAPACITY, EXIT_INPUT, EXIT_OK, main
from nashdpy.game.game import StrategyProfile, epsilon
from nashdpy.nfg.nfg import load_nfg
from nashdpy.game._config import RECORD_SERIES, SUMMARY_SERIES, TRACE_SERIES

MP_TEXT = 'NFG 1 R "mp" { "A" "B" } { 2 2 }\n\n1 0 0 1 0 1 1 0\n'


def result_fields(out):
    line = out.strip().splitlines()[-1]
    return dict(i.split('=', 1) for i in line.split())


@pytest.fixture
def mp_file(tmp_path):
    path = tmp_path / 'mp.nfg'
    path.write_text(MP_TEXT)
    return str(path)


def test_solve_nfg_file(mp_file, capsys):
    assert main(['solve', '--game', mp_file, '--alg', 'nashd_gd']) == EXIT_OK
    fields = result_fields(capsys.readouterr().out)
    assert fields['algorithm'] == 'nashd_gd'
    assert float(fields['epsilon']) <= 0.01
    assert int(fields['iterations']) == 1000
    assert float(fields['nashd']) >= float(fields['epsilon'])


def test_solve_generated_prisoners_dilemma(capsys):
    argv = ['solve', '--class', 'prisoners_dilemma_n', '--players', '2', '--alg', 'fp', '--rounds', '1000']
    assert main(argv) == EXIT_OK
    fields = result_fields(capsys.readouterr().out)
    assert float(fields['epsilon']) == pytest.approx(0.0, abs=1e-12)
    assert int(fields['iterations']) == 1000


def test_solve_writes_trace(mp_file, tmp_path, capsys):
    path = tmp_path / 'trace.csv'
    assert main(['solve', '--game', mp_file, '--alg', 'rm', '--rounds', '100', '--trace', str(path)]) == EXIT_OK
    trace = pd.read_csv(path)
    assert list(trace.columns) == TRACE_SERIES
    assert trace['iteration'].tolist() == list(range(10, 101, 10))


def test_solve_external_profile(mp_file, tmp_path, capsys):
    profile = tmp_path / 'sigma.txt'
    profile.write_text('0.5 0.5\n0.5 0.5\n')
    assert main(['solve', '--game', mp_file, '--alg', 'external', '--profile', str(profile)]) == EXIT_OK
    fields = result_fields(capsys.readouterr().out)
    assert float(fields['epsilon']) == 0.0
    assert int(fields['iterations']) == 0

    assert main(['solve', '--game', mp_file, '--alg', 'external']) == EXIT_INPUT


def test_truncated_file_is_an_input_error(tmp_path, capsys):
    path = tmp_path / 'short.nfg'
    path.write_text(MP_TEXT.replace(' 1 0\n', ' 1\n'))
    assert main(['solve', '--game', str(path), '--alg', 'nashd_gd']) == EXIT_INPUT
    assert 'Payoff count mismatch' in capsys.readouterr().err


def test_usage_errors(mp_file, tmp_path, capsys):
    assert main(['solve', '--game', mp_file, '--alg', 'simplex']) == EXIT_INPUT
    assert main(['solve', '--class', 'random', '--alg', 'fp']) == EXIT_INPUT
    assert main(['solve', '--game', str(tmp_path / 'missing.nfg'), '--alg', 'fp']) == EXIT_INPUT
    assert main(['solve', '--class', 'random', '--players', '2', '--actions', '1', '--alg', 'fp']) == EXIT_INPUT
    assert main(['solve', '--game', mp_file, '--alg', 'nashd_gd', '--iters', '0']) == EXIT_INPUT
    assert main([]) == EXIT_INPUT


def test_generate_is_deterministic(tmp_path):
    first, second = tmp_path / 'a.nfg', tmp_path / 'b.nfg'
    for path in (first, second):
        argv = ['generate', '--class', 'random', '--players', '3', '--actions', '3', '--seed', '5', '-o', str(path)]
        assert main(argv) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert load_nfg(str(first)).action_counts == [3, 3, 3]


def test_generate_over_capacity(tmp_path, capsys):
    path = tmp_path / 'huge.nfg'
    argv = ['generate', '--class', 'random', '--players', '9', '--actions', '10', '-o', str(path)]
    assert main(argv) == EXIT_CAPACITY
    assert not path.exists()
    assert capsys.readouterr().err


def test_generated_coordination_game_parses(tmp_path):
    path = tmp_path / 'coord.nfg'
    assert main(['generate', '--class', 'coordination', '--players', '3', '--actions', '3', '-o', str(path)]) == EXIT_OK
    game = load_nfg(str(path))
    for action in range(3):
        assert epsilon(game, StrategyProfile.pure((action,) * 3, [3, 3, 3])) == 0.0


def test_bench_writes_identical_untimed_csvs(tmp_path, capsys):
    outputs = []
    for run in range(2):
        records = tmp_path / f'records_{run}.csv'
        argv = ['bench', '--players', '2', '--actions', '2', '--seeds', '3', '--algs', 'fp,rm', '--rounds', '20',
                '--no-timing', '--quiet', '-o', str(records)]
        assert main(argv) == EXIT_OK
        summary = tmp_path / f'records_{run}_summary.csv'
        assert summary.exists()
        outputs.append((records.read_bytes(), summary.read_bytes()))
    assert outputs[0] == outputs[1]

    records = pd.read_csv(tmp_path / 'records_0.csv')
    assert list(records.columns) == RECORD_SERIES
    assert len(records) == 6
    assert (records['wall_ms'] == 0.0).all()
    summary = pd.read_csv(tmp_path / 'records_0_summary.csv')
    assert list(summary.columns) == SUMMARY_SERIES
    assert summary['count'].tolist() == [3, 3]


def test_bench_report_and_summary_path(tmp_path, capsys):
    records, summary = tmp_path / 'records.csv', tmp_path / 'table.csv'
    argv = ['bench', '--classes', 'congestion', '--players', '2-3', '--actions', '2', '--seeds', '2', '--algs', 'rm',
            '--rounds', '10', '--quiet', '--report', '-o', str(records), '--summary', str(summary)]
    assert main(argv) == EXIT_OK
    assert 'CONGESTION' in capsys.readouterr().out
    assert len(pd.read_csv(summary)) == 2
    assert main(['bench', '--algs', 'external', '-o', str(records)]) == EXIT_INPUT


def test_trace_matching_pennies(mp_file, tmp_path):
    path = tmp_path / 'trace.csv'
    assert main(['trace', '--game', mp_file, '--alg', 'nashd_gd', '-o', str(path)]) == EXIT_OK
    trace = pd.read_csv(path)
    assert list(trace.columns) == TRACE_SERIES
    assert len(trace) == 1000


def test_trace_constant_game(tmp_path):
    game, path = tmp_path / 'zero.nfg', tmp_path / 'trace.csv'
    game.write_text('NFG 1 R "zero" { "1" "2" } { 2 2 }\n\n0 0 0 0 0 0 0 0\n')
    for alg in ('nashd_gd', 'fp', 'rm'):
        argv = ['trace', '--game', str(game), '--alg', alg, '--iters', '50', '--rounds', '50', '-o', str(path)]
        assert main(argv) == EXIT_OK
        assert (pd.read_csv(path)['epsilon'] == 0.0).all()


def test_trace_regret_matching_improves_on_prisoners_dilemma(tmp_path):
    path = tmp_path / 'trace.csv'
    argv = ['trace', '--class', 'prisoners_dilemma_n', '--players', '2', '--alg', 'rm', '--rounds', '1000',
            '--every', '1', '-o', str(path)]
    assert main(argv) == EXIT_OK
    trace = pd.read_csv(path).set_index('iteration')
    assert len(trace) == 1000
    assert trace.loc[1000, 'epsilon'] < trace.loc[100, 'epsilon']


def test_undecodable_file_is_an_input_error(tmp_path, capsys):
    path = tmp_path / 'bad.nfg'
    path.write_bytes(b'NFG 1 R "\xff\xfe" { "A" "B" } { 2 2 }\n\n1 0 0 1 0 1 1 0\n')
    assert main(['solve', '--game', str(path), '--alg', 'fp']) == EXIT_INPUT
    assert 'UTF-8' in capsys.readouterr().err


def test_generate_needs_nfg_extension(tmp_path, capsys):
    path = tmp_path / 'out.txt'
    assert main(['generate', '--class', 'random', '--players', '2', '-o', str(path)]) == EXIT_INPUT
    assert not path.exists()
    assert '.nfg' in capsys.readouterr().err
