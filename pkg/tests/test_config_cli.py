import csv
import io
import os
import subprocess
import sys

import pytest
import yaml
from hypothesis import given, strategies as st

from varlp.cli import HEADER, main, run_command
from varlp.config import load_config, parse_config, serialize
from varlp.exceptions import ConfigError

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS = os.path.join(ROOT, 'configs')

MINIMAL = """
id: minimal
grid: {n: 1, M: 0, origin: [0], cells: [3]}
exponent: {type: constant, value: 2}
function: {type: constant, value: 1.0}
"""


def doc(**over):
    d = yaml.safe_load(MINIMAL)
    d.update(over)
    return d


def errors_of(d):
    with pytest.raises(ConfigError) as exc:
        parse_config(yaml.safe_dump(d))
    return exc.value.errors


def test_minimal_config():
    cfg = parse_config(MINIMAL)
    assert cfg.id == 'minimal'
    assert cfg.params['rel_tol'] == 1e-10


def test_reciprocal_out_of_range_names_field():
    errs = errors_of(doc(exponent={'type': 'reciprocal_table',
                                   'values': [0.5, 1.5, 0.2], 'tail': 0.5}))
    assert any(e.startswith('exponent.values[1]') for e in errs)


def test_overlapping_step_cubes():
    errs = errors_of(doc(exponent={'type': 'step', 'tail': 2, 'pieces': [
        {'lower': [0], 'side': '2/3', 'value': 3},
        {'lower': ['1/3'], 'side': '1/3', 'value': 4}]}))
    assert any('overlaps' in e for e in errs)


def test_all_errors_reported():
    d = doc(function={'type': 'indicator', 'lower': [0.1], 'side': 1},
            params={'bogus': 1, 'rel_tol': 2})
    d['extra'] = True
    errs = errors_of(d)
    assert any(e.startswith('function') and 'misaligned' in e for e in errs)
    assert 'params.bogus: unknown key' in errs
    assert any(e.startswith('params.rel_tol') for e in errs)
    assert 'extra: unknown key' in errs


def test_exponent_below_one():
    errs = errors_of(doc(exponent={'type': 'constant', 'value': 0.5}))
    assert errs == ['exponent.value: exponent 0.5 outside [1, inf]']


def test_missing_sections():
    with pytest.raises(ConfigError) as exc:
        parse_config('id: x\n')
    assert {'grid: missing', 'exponent: missing', 'function: missing'} <= \
        set(exc.value.errors)


def test_not_yaml():
    with pytest.raises(ConfigError):
        parse_config('grid: [unclosed')


@pytest.mark.parametrize('name', sorted(os.listdir(CONFIGS)))
def test_shipped_configs_round_trip(name):
    cfg = load_config(os.path.join(CONFIGS, name))
    text = serialize(cfg)
    again = parse_config(text)
    assert again == cfg
    assert serialize(again) == text


@given(st.integers(0, 3), st.integers(1, 9), st.sampled_from(
    [1, 1.5, 2, 'inf']), st.integers(0, 2**31 - 1), st.floats(1e-12, 0.1))
def test_round_trip_random(M, cells, p0, seed, tol):
    d = {'id': 'r', 'grid': {'n': 1, 'M': M, 'origin': ['-1/3'],
                             'cells': [cells]},
         'exponent': {'type': 'constant', 'value': p0},
         'function': {'type': 'random', 'seed': seed},
         'params': {'rel_tol': tol}}
    cfg = parse_config(yaml.safe_dump(d))
    assert parse_config(serialize(cfg)) == cfg


def rows(text):
    r = list(csv.reader(io.StringIO(text)))
    assert tuple(r[0]) == HEADER
    return {row[1]: row for row in r[1:]}


def test_constants_on_constant_exponent():
    status, text, _, _ = run_command(parse_config(MINIMAL), 'constants')
    r = rows(text)
    assert status == 0
    assert r['constant.muckenhoupt'][2] == '1'
    assert r['constant.nekvinda'][2] == '1'


def test_seventeen_digits():
    cfg = parse_config(MINIMAL.replace('value: 1.0', 'value: 0.1'))
    _, text, _, _ = run_command(cfg, 'norm')
    val = rows(text)['norm.rho'][2]
    assert float(val) == pytest.approx(0.1, rel=1e-9)
    assert len(val.replace('.', '').lstrip('0')) == 17


def test_verify_counterexample_is_expected_failure():
    cfg = load_config(os.path.join(CONFIGS, 'oscillating.yaml'))
    status, text, messages, _ = run_command(cfg, 'verify')
    assert status == 0
    assert rows(text)['convergence.classification'][5] == 'expected-failure'
    assert 'convergence: expected-failure' in messages


def test_maximal_spike_flagged_unbounded():
    cfg = load_config(os.path.join(CONFIGS, 'spike_p1.yaml'))
    status, text, messages, files = run_command(cfg, 'maximal')
    assert status == 0
    assert any(m.startswith('unbounded family (p^- = 1)') for m in messages)
    assert rows(text)['maximal.flag.unbounded_family'][2] == '1'
    assert 'maximal_values' in files


def test_verify_reports_violation():
    d = doc(params={'suites': ['norm_chain'], 'suite_scale': 10})
    status, text, messages, _ = run_command(parse_config(yaml.safe_dump(d)),
                                            'verify', seed=0)
    assert status == 1
    assert rows(text)['suite.norm_chain.worst_ratio'][5] == 'false'
    assert any('violation: norm_chain' in m for m in messages)


def test_byte_identical_runs(tmp_path):
    path = os.path.join(CONFIGS, 'step_mixed.yaml')
    outs = []
    for i in range(2):
        out = tmp_path / f'o{i}'
        assert main(['--config', path, '--command', 'report', '--out',
                     str(out), '--seed', '4']) == 0
        outs.append((out / 'step_mixed_report.csv').read_bytes())
    assert outs[0] == outs[1]


def test_exit_code_two_on_bad_config(tmp_path, capsys):
    bad = tmp_path / 'bad.yaml'
    bad.write_text(MINIMAL.replace('value: 2', 'value: 0.2'))
    assert main(['--config', str(bad), '--command', 'norm']) == 2
    assert 'exponent.value' in capsys.readouterr().err
    assert main(['--config', str(tmp_path / 'none.yaml'),
                 '--command', 'norm']) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, '-m', 'varlp', '--config',
         os.path.join(CONFIGS, 'constant.yaml'), '--command', 'modular',
         '--tol', '1e-8'], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == ','.join(HEADER)
