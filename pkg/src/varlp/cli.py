"""Command line front end: ``python -m varlp --config FILE --command NAME``.

Every command prints CSV rows ``scenario_id, quantity, value, lower_bound,
upper_bound, pass`` to stdout (and to ``--out DIR/<id>_<command>.csv``).
Exit status is 0 on success, 1 when a suite or check fails and 2 when the
configuration is invalid.
"""

import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import approximation as apx
from .classes import best_p_infinity, muckenhoupt_constant, nekvinda_constant
from .config import load_config
from .exceptions import ConfigError, VarLpError
from .grid import ReciprocalExponent, essential_bounds
from .luxemburg import luxemburg_norm
from .maximal import (DyadicGridId, cz_decompose, maximal_function,
                      maximal_ratio)
from .modulars import ModularKind, modular
from .suites import SUITES

__all__ = ('main', 'run_command', 'COMMANDS', 'HEADER', 'format_rows')

COMMANDS = ('norm', 'modular', 'constants', 'maximal', 'cz', 'verify',
            'report')
HEADER = ('scenario_id', 'quantity', 'value', 'lower_bound', 'upper_bound',
          'pass')
UNBOUNDED_FLAG = 'unbounded family (p^- = 1)'
# growth per refinement above which a p^- = 1 family counts as unbounded
GROWTH_THRESHOLD = 1.25

_KIND_NAMES = {ModularKind.RHO: 'rho', ModularKind.RHO_TILDE: 'rho_tilde',
               ModularKind.RHO_ER: 'rho_er', ModularKind.RHO_KR: 'rho_kr'}


def _fmt(x):
    if x is None:
        return ''
    if isinstance(x, bool):
        return 'true' if x else 'false'
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return 'nan'
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    return format(x, '.17g')


def format_rows(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(HEADER)
    for r in rows:
        w.writerow([_fmt(c) for c in r])
    return buf.getvalue()


class _Run:
    """Scenario objects built once, plus the row collector."""

    def __init__(self, cfg, seed=None, tol=None):
        self.cfg = cfg
        self.sid = cfg.id
        self.params = dict(cfg.params)
        if seed is not None:
            self.params['seed'] = int(seed)
        if tol is not None:
            self.params['rel_tol'] = float(tol)
        self.grid = cfg.build_grid()
        self.p = cfg.build_exponent(self.grid)
        self.f = cfg.build_function(self.grid)
        self.rows = []
        self.messages = []
        self.failed = False
        self.files = {}

    def row(self, quantity, value, lower=None, upper=None, ok=None):
        if ok is False:
            self.failed = True
        self.rows.append((self.sid, quantity, value, lower, upper, ok))


def _cmd_norm(run):
    tol = run.params['rel_tol']
    for kind, name in _KIND_NAMES.items():
        r = luxemburg_norm(kind, run.f, run.p, tol)
        lo, hi = r.bracket
        run.row(f'norm.{name}', r.value, lo, hi)


def _cmd_modular(run):
    for kind, name in _KIND_NAMES.items():
        run.row(f'modular.{name}', modular(kind, run.f, run.p))


def _cmd_constants(run):
    ms = run.params['max_side_cells']
    run.row('constant.muckenhoupt', muckenhoupt_constant(run.p, ms), 1.0)
    ui = run.params['p_inf_reciprocal']
    ui = run.p.u_tail if ui is None else ui
    run.row('constant.nekvinda', nekvinda_constant(run.p, ui), 1.0)
    run.row('constant.p_inf_reciprocal', ui)
    best_u, best_val = best_p_infinity(run.p)
    run.row('constant.best_p_inf_reciprocal', best_u)
    run.row('constant.best_nekvinda', best_val, 1.0)


def _cmd_maximal(run):
    cfg = run.cfg
    mf = maximal_function(run.f)
    run.files['maximal_values'] = _values_csv(run.grid, run.f.values,
                                              mf.values)
    p_minus = essential_bounds(run.p)[0]
    ratios = []
    for r in range(run.params['refinements'] + 1):
        g = cfg.build_grid(r)
        f = cfg.build_function(g)
        ratio = maximal_ratio(f, cfg.build_exponent(g))
        ratios.append(ratio)
        run.row(f'maximal.ratio.refine{r}', ratio, 1.0)
    growth = [b / a for a, b in zip(ratios, ratios[1:])]
    for r, gr in enumerate(growth, 1):
        run.row(f'maximal.growth.refine{r}', gr)
    if p_minus == 1.0:
        unbounded = bool(growth) and min(growth) >= GROWTH_THRESHOLD
        run.row('maximal.flag.unbounded_family', float(unbounded))
        run.messages.append(UNBOUNDED_FLAG + (
            f': ratio grows by at least {min(growth):.4g}x per refinement'
            if unbounded else ': growth below threshold on this scenario'))


def _values_csv(grid, fv, mv):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    axes = [f'x{i}' for i in range(grid.n)]
    w.writerow(axes + ['f', 'Mf'])
    centers = [c.ravel() for c in grid.cell_centers()]
    for i, (a, b) in enumerate(zip(fv.ravel(), mv.ravel())):
        w.writerow([_fmt(c[i]) for c in centers] + [_fmt(a), _fmt(b)])
    return buf.getvalue()


def _cmd_cz(run):
    n = run.grid.n
    gamma = run.params['gamma'] or 3.0 ** n
    if run.f.is_zero():
        run.row('cz.levels', 0)
        return
    cz = cz_decompose(run.f, DyadicGridId((0,) * n), gamma)
    run.row('cz.gamma', gamma)
    run.row('cz.k_min', cz.k_range[0])
    run.row('cz.k_max', cz.k_range[1])
    vol = run.grid.cell_volume
    for k in cz.levels:
        run.row(f'cz.k{k}.cubes', len(cz.cubes[k]))
        run.row(f'cz.k{k}.omega_measure', float(cz.omega(k).sum()) * vol)
    for key, ok in cz.verify().items():
        run.row(f'cz.check.{key}', float(ok), ok=ok)


def _scenario_sequence(run):
    """Sequence ``k -> p_k`` and probe index requested by the scenario."""
    p = run.p
    if run.params['sequence'] == 'approximation':
        return None, apx.PROBE_K
    x = run.grid.cell_centers()[0]

    def seq(k):
        hot = (x > 1.0 / (k + 1)) & (x < 1.0 / k)
        return ReciprocalExponent(p.grid, np.where(hot, 0.0, p.u), p.u_tail,
                                  np.where(hot, 1.0, p.v), p.v_tail)
    return seq, max(run.params['k_list'])


def _cmd_verify(run):
    names = run.params['suites']
    names = sorted(SUITES) if names is None else list(names)
    scale = run.params['suite_scale']
    seed = run.params['seed']
    for name in names:
        fn, quick = SUITES[name]
        res = fn(max(1, int(round(quick * scale))), seed)
        run.row(f'suite.{name}.instances', res.instances)
        run.row(f'suite.{name}.worst_ratio', res.worst, None, 1.0,
                res.passed)
        run.messages.append(res.line())
        for label in res.failures:
            run.messages.append(f'  violation: {name} {label}')
    seq, probe = _scenario_sequence(run)
    rep = apx.convergence_suite(run.p, run.f, run.params['k_list'], seq,
                                probe)
    run.row('convergence.target_rho_tilde', rep.target_tilde)
    run.row('convergence.probe_rho_tilde', rep.values[probe][0])
    run.row('convergence.envelope_r', rep.envelopes[0])
    run.row('convergence.envelope_s', rep.envelopes[1])
    ok = 'expected-failure' if rep.classification == 'expected-failure' \
        else rep.passed
    run.row('convergence.classification', None, ok=ok)
    run.messages.append(f'convergence: {rep.classification}')


def _cmd_report(run):
    _cmd_modular(run)
    _cmd_norm(run)
    _cmd_constants(run)
    if not run.f.is_zero():
        run.row('maximal.ratio', maximal_ratio(run.f, run.p), 1.0)


_DISPATCH = {'norm': _cmd_norm, 'modular': _cmd_modular,
             'constants': _cmd_constants, 'maximal': _cmd_maximal,
             'cz': _cmd_cz, 'verify': _cmd_verify, 'report': _cmd_report}


def run_command(cfg, command, seed=None, tol=None):
    """Run ``command`` on a validated scenario.

    Returns
    -------
    status : int
        0 or 1.
    csv_text : str
    messages : list of str
        Human readable diagnostics (flags, suite lines, violations).
    files : dict
        Extra artifacts ``name -> csv text`` (``maximal`` writes Mf).
    """
    if command not in _DISPATCH:
        raise ValueError(f'unknown command {command!r}')
    run = _Run(cfg, seed, tol)
    _DISPATCH[command](run)
    return int(run.failed), format_rows(run.rows), run.messages, run.files


def _parser():
    ap = argparse.ArgumentParser(
        prog='varlp', description='Variable exponent Lebesgue space toolbox.')
    ap.add_argument('--config', required=True, help='scenario YAML file')
    ap.add_argument('--command', required=True, choices=COMMANDS)
    ap.add_argument('--seed', type=int, default=None,
                    help='overrides params.seed')
    ap.add_argument('--out', default=None, help='directory for CSV files')
    ap.add_argument('--tol', type=float, default=None,
                    help='overrides params.rel_tol')
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as e:
        for msg in e.errors:
            print(f'config error: {msg}', file=sys.stderr)
        return 2
    except OSError as e:
        print(f'config error: {e}', file=sys.stderr)
        return 2
    if args.tol is not None and not 0 < args.tol < 0.5:
        print('config error: --tol must lie in (0, 1/2)', file=sys.stderr)
        return 2
    try:
        status, text, messages, files = run_command(cfg, args.command,
                                                    args.seed, args.tol)
    except VarLpError as e:
        print(f'config error: {e}', file=sys.stderr)
        return 2
    sys.stdout.write(text)
    for m in messages:
        print(m, file=sys.stderr)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        stem = f'{cfg.id}_{args.command}'
        with open(os.path.join(args.out, stem + '.csv'), 'w',
                  encoding='utf-8', newline='') as fh:
            fh.write(text)
        for name, body in files.items():
            with open(os.path.join(args.out, f'{cfg.id}_{name}.csv'), 'w',
                      encoding='utf-8', newline='') as fh:
                fh.write(body)
    return status
