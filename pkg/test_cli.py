#!/usr/bin/env python3
"""
Tests for the command-line interface: argument parsing, JSON reports and
exit statuses.
"""

import json
import os
import subprocess
import sys

import pytest

# Add the app directory to the Python path
APP_DIR = os.path.join(os.path.dirname(__file__), 'app')
sys.path.insert(0, APP_DIR)

import main as cli
from src.frames.frames import builtin_frame
from src.protocols.cloning import clone_report
from src.protocols.teleportation import teleport

MAIN = os.path.join(APP_DIR, 'main.py')


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def mixed_qubit(tmp_path):
    return write_json(tmp_path / 'mixed.json', {'re': [[0.5, 0.0], [0.0, 0.5]], 'im': [[0.0, 0.0], [0.0, 0.0]]})


@pytest.fixture
def plus_qutrit(tmp_path):
    amplitude = 3 ** -0.5
    return write_json(tmp_path / 'psi.json', {'re': [amplitude] * 3, 'im': [0.0] * 3})


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return status, report, captured.err


@pytest.mark.parametrize("text,expected", [
    ('2,3', [2, 3]),
    ('2-5', [2, 3, 4, 5]),
    ('3,2,3', [2, 3]),
])
def test_parse_dims(text, expected):
    assert cli.parse_dims(text) == expected


@pytest.mark.parametrize("text", ['1,2', 'two', ''])
def test_parse_dims_rejects(text):
    with pytest.raises(Exception):
        cli.parse_dims(text)


def test_verify_module_exits_zero(capsys):
    status, report, _ = run_cli(capsys, 'verify', 'hilbert_core', '--dims', '2,3')
    assert status == cli.EXIT_OK
    assert report['command'] == 'verify'
    assert report['results']['summary']['failed'] == 0
    assert report['tolerance_used']['absolute'] == pytest.approx(1e-9)


def test_verify_unknown_tag_exits_two(capsys):
    status, report, err = run_cli(capsys, 'verify', 'eq-bogus')
    assert status == cli.EXIT_USAGE
    assert report is None
    assert 'eq-bogus' in err


def test_verify_tolerance_flag_is_recorded(capsys):
    status, report, _ = run_cli(capsys, 'verify', 'eq-pt', '--dim', '3', '--tol', '1e-7')
    assert status == cli.EXIT_OK
    assert report['tolerance_used']['absolute'] == pytest.approx(1e-7)
    assert report['parameters']['dims'] == [3]


def test_failed_check_exits_one(capsys):
    # An incomplete frame cannot satisfy the SWAP identity
    status, report, _ = run_cli(capsys, 'corr', 'swap-check', '--frame', 'projective', '--dim', '2')
    assert status == cli.EXIT_CHECK_FAILED
    assert report['results']['residual'] is None
    assert report['results']['rank'] == 2


def test_swap_check_with_fill(capsys):
    status, report, _ = run_cli(capsys, 'corr', 'swap-check', '--frame', 'sic2', '--dim', '2')
    assert status == cli.EXIT_OK
    assert report['results']['passed'] == [True, True]


def test_pt_check(capsys):
    status, report, _ = run_cli(capsys, 'corr', 'pt-check', '--dim', '3')
    assert status == cli.EXIT_OK
    assert report['results']['min_eigenvalue'] == pytest.approx(-1 / 3)


def test_describe_state(capsys, mixed_qubit):
    status, report, _ = run_cli(capsys, 'describe', 'state', '--file', mixed_qubit)
    assert status == cli.EXIT_OK
    assert report['results']['purity'] == pytest.approx(0.5)


def test_describe_builtin_frame(capsys):
    status, report, _ = run_cli(capsys, 'describe', 'frame', '--builtin', 'phase-point', '--dim', '3')
    assert status == cli.EXIT_OK
    assert report['results']['conditions']['satisfied_count'] == 2


def test_frame_describe(capsys):
    status, report, _ = run_cli(capsys, 'frame', 'describe', '--name', 'sic2', '--dim', '2')
    assert status == cli.EXIT_OK
    assert report['results']['conditions']['orthogonality']['satisfied'] is False


def test_truncated_state_file_exits_two(capsys, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0.0, 0.0],')
    status, report, err = run_cli(capsys, 'describe', 'state', '--file', str(path))
    assert status == cli.EXIT_USAGE
    assert report is None
    assert 'broken.json' in err


def test_non_physical_state_exits_two(capsys, tmp_path):
    path = write_json(tmp_path / 'bad.json', {'re': [[1.5, 0.0], [0.0, -0.5]], 'im': [[0.0, 0.0], [0.0, 0.0]]})
    status, _, err = run_cli(capsys, 'describe', 'state', '--file', path)
    assert status == cli.EXIT_USAGE
    assert 'non-physical' in err


def test_phase_point_needs_odd_prime(capsys):
    status, _, _ = run_cli(capsys, 'describe', 'frame', '--builtin', 'phase-point', '--dim', '4')
    assert status == cli.EXIT_USAGE


def test_qp_dist_kd_marginals(capsys, mixed_qubit):
    status, report, _ = run_cli(capsys, 'qp', 'dist', '--frame', 'kd', '--dim', '2', '--state', mixed_qubit)
    assert status == cli.EXIT_OK
    assert report['results']['marginals']['over_a'] == pytest.approx([0.5, 0.5])
    assert len(report['results']['distribution']['values']) == 4


def test_qp_dist_csv_export(capsys, tmp_path):
    out = tmp_path / 'dist.csv'
    status, _, _ = run_cli(capsys, 'qp', 'dist', '--frame', 'phase-point', '--dim', '3',
                           '--state', write_json(tmp_path / 'mixed3.json', {
                               're': [[1 / 3, 0, 0], [0, 1 / 3, 0], [0, 0, 1 / 3]],
                               'im': [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
                           }), '--out', str(out))
    assert status == cli.EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == 'i0,i1,re,im'
    assert len(lines) == 10


def test_qp_dist_dimension_mismatch(capsys, mixed_qubit):
    status, _, _ = run_cli(capsys, 'qp', 'dist', '--frame', 'kd', '--dim', '3', '--state', mixed_qubit)
    assert status == cli.EXIT_USAGE


def test_qp_tomo_is_seeded(capsys, mixed_qubit):
    _, first, _ = run_cli(capsys, 'qp', 'tomo', '--state', mixed_qubit, '--shots', '5000', '--seed', '7')
    _, second, _ = run_cli(capsys, 'qp', 'tomo', '--state', mixed_qubit, '--shots', '5000', '--seed', '7')
    assert first['results']['counts'] == second['results']['counts']
    assert sum(first['results']['counts']) == 5000
    assert first['seed'] == 7


def test_teleport_all_outcomes(capsys, plus_qutrit, tmp_path):
    out = tmp_path / 'tele.json'
    status, report, _ = run_cli(capsys, 'proto', 'teleport', '--dim', '3', '--state', plus_qutrit,
                                '--all-outcomes', '--out', str(out))
    assert status == cli.EXIT_OK
    assert len(report['results']['outcomes']) == 9
    assert report['results']['total_probability'] == pytest.approx(1.0)
    assert report['results']['worst_corrected_trace_distance'] < 1e-9
    assert json.loads(out.read_text())['command'] == 'proto teleport'


def test_teleport_bad_outcome_exits_two(capsys, plus_qutrit):
    status, _, _ = run_cli(capsys, 'proto', 'teleport', '--dim', '3', '--state', plus_qutrit, '--outcome', '3,0')
    assert status == cli.EXIT_USAGE


def test_clone_with_frame(capsys, plus_qutrit):
    status, report, _ = run_cli(capsys, 'proto', 'clone', '--dim', '3', '--state', plus_qutrit,
                                '--frame', 'phase-point')
    assert status == cli.EXIT_OK
    assert report['results']['clone_fidelity'] == pytest.approx(6 / 8)
    assert report['results']['ideal_weight'] == pytest.approx(1 / 3)


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2


def test_script_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, MAIN, 'verify', 'eq-pt', '--dims', '2,3'],
        capture_output=True, text=True, cwd=str(tmp_path),
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)['results']['summary']['failed'] == 0


def test_script_unknown_selector(tmp_path):
    result = subprocess.run([sys.executable, MAIN, 'verify', 'eq-bogus'], capture_output=True, text=True,
                            cwd=str(tmp_path))
    assert result.returncode == 2
    assert result.stdout == ''


@pytest.mark.parametrize("document", [
    {'re': [[1.0, 0.0], [0.0]], 'im': [[0.0, 0.0], [0.0, 0.0]]},
    {'re': [['a', 0.0], [0.0, 0.0]], 'im': [[0.0, 0.0], [0.0, 0.0]]},
    {'re': [1.0, 0.0], 'im': [0.0, None]},
])
def test_malformed_state_exits_two(capsys, tmp_path, document):
    path = write_json(tmp_path / 'malformed.json', document)
    status, report, err = run_cli(capsys, 'describe', 'state', '--file', path)
    assert status == cli.EXIT_USAGE
    assert report is None
    assert err.startswith('error:')


def test_non_numeric_state_in_qp_dist_exits_two(capsys, tmp_path):
    path = write_json(tmp_path / 'text.json', {'re': [['a', 0], [0, 0]], 'im': [[0, 0], [0, 0]]})
    status, report, _ = run_cli(capsys, 'qp', 'dist', '--frame', 'kd', '--dim', '2', '--state', path)
    assert status == cli.EXIT_USAGE
    assert report is None


def test_empty_frame_file_exits_two(capsys, tmp_path):
    path = write_json(tmp_path / 'empty.json', {'elements': []})
    status, report, err = run_cli(capsys, 'describe', 'frame', '--file', path)
    assert status == cli.EXIT_USAGE
    assert report is None
    assert 'empty.json' in err


def test_frame_weights_must_be_pairs(capsys, tmp_path):
    document = builtin_frame('projective', 2).to_json_dict()
    document['weights'] = [[1.0], [1.0]]
    path = write_json(tmp_path / 'weights.json', document)
    status, report, _ = run_cli(capsys, 'describe', 'frame', '--file', path)
    assert status == cli.EXIT_USAGE
    assert report is None


def test_state_tolerance_reaches_validation(capsys, tmp_path):
    # Norm is off by 5e-9: outside the default band, inside 1e-6
    path = write_json(tmp_path / 'near.json', {'re': [1.0, 1e-4], 'im': [0.0, 0.0]})
    status, _, _ = run_cli(capsys, 'describe', 'state', '--file', path)
    assert status == cli.EXIT_USAGE
    status, report, _ = run_cli(capsys, 'describe', 'state', '--file', path, '--tol', '1e-6')
    assert status == cli.EXIT_OK
    assert report['results']['purity'] == pytest.approx(1.0, abs=1e-6)


def test_clone_reports_passed(capsys, plus_qutrit):
    status, report, _ = run_cli(capsys, 'proto', 'clone', '--dim', '3', '--state', plus_qutrit)
    assert status == cli.EXIT_OK
    assert report['results']['passed'] is True
    assert report['results']['worst_residual'] < 1e-9


def test_clone_residual_failure_exits_one(capsys, monkeypatch, plus_qutrit):
    def broken(rho, frame, tol):
        return clone_report(rho, frame, tol).model_copy(update={'decomposition_residual': 0.5})

    monkeypatch.setattr(cli, 'clone_report', broken)
    status, report, _ = run_cli(capsys, 'proto', 'clone', '--dim', '3', '--state', plus_qutrit)
    assert status == cli.EXIT_CHECK_FAILED
    assert report['results']['passed'] is False
    assert report['results']['worst_residual'] == pytest.approx(0.5)


def test_teleport_residual_failure_exits_one(capsys, monkeypatch, plus_qutrit):
    def broken(rho, dim, outcome, tol):
        return teleport(rho, dim, outcome, tol).model_copy(update={'corrected_trace_distance': 0.5})

    monkeypatch.setattr(cli, 'teleport', broken)
    status, report, _ = run_cli(capsys, 'proto', 'teleport', '--dim', '3', '--state', plus_qutrit)
    assert status == cli.EXIT_CHECK_FAILED
    assert report['results']['passed'] is False


def test_clone_export_uses_data_dir(capsys, monkeypatch, tmp_path, plus_qutrit):
    monkeypatch.setenv('DATA_DIR', str(tmp_path / 'data'))
    status, _, _ = run_cli(capsys, 'proto', 'clone', '--dim', '3', '--state', plus_qutrit,
                           '--frame', 'phase-point', '--export')
    assert status == cli.EXIT_OK
    exported = tmp_path / 'data' / 'proto' / 'phase-point_d3_discrepancy.csv'
    assert exported.exists()
    assert len(exported.read_text().strip().splitlines()) == 10


def test_bare_out_name_goes_under_data_dir(capsys, monkeypatch, tmp_path, plus_qutrit):
    monkeypatch.setenv('DATA_DIR', str(tmp_path))
    status, _, _ = run_cli(capsys, 'proto', 'clone', '--dim', '3', '--state', plus_qutrit,
                           '--frame', 'phase-point', '--out', 'clone.csv')
    assert status == cli.EXIT_OK
    assert (tmp_path / 'proto' / 'clone.csv').exists()

    status, _, _ = run_cli(capsys, 'corr', 'pt-check', '--dim', '2', '--out', 'pt.json')
    assert status == cli.EXIT_OK
    assert json.loads((tmp_path / 'corr' / 'pt.json').read_text())['command'] == 'corr pt-check'


def test_conjugate_check_table(capsys, tmp_path):
    out = tmp_path / 'table.csv'
    status, report, _ = run_cli(capsys, 'corr', 'conjugate-check', '--dim', '3', '--seed', '2', '--out', str(out))
    assert status == cli.EXIT_OK
    assert report['results']['passed'] is True
    assert report['seed'] == 2
    lines = out.read_text().strip().splitlines()
    assert lines[0] == 'k,l0,l1,l2'
    assert len(lines) == 4


def test_csv_without_table_exits_two(capsys, tmp_path):
    status, report, err = run_cli(capsys, 'corr', 'pt-check', '--dim', '2', '--out', str(tmp_path / 'pt.csv'))
    assert status == cli.EXIT_USAGE
    assert report is None
    assert 'no result table' in err
    assert not (tmp_path / 'pt.csv').exists()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
