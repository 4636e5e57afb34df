"""Scenario configuration: YAML documents validated into :class:`ScenarioConfig`.

Schema (all sections are mappings; ``?`` marks optional keys)::

    id: text
    grid:      {n, M, origin, cells}
    exponent:  {type: constant, value}                       value: p or "inf"
             | {type: step, tail, pieces: [{lower, side, value}, ...]}
             | {type: log_holder, base, amplitude, c_log, center?}
             | {type: reciprocal_table, values, tail}        reciprocals 1/p
    function:  {type: constant, value}
             | {type: indicator, lower, side, value?}
             | {type: spikes, spikes: [{at, mass}, ...]}
             | {type: random, seed, scale?, density?}
    params?:   rel_tol, max_side_cells, k_list, samples, seed, gamma,
               p_inf_reciprocal, suites, suite_scale, refinements, sequence

Coordinates may be numbers or strings such as ``"1/3"``.  Validation
collects every problem before raising :class:`ConfigError`.
"""

from dataclasses import dataclass, field
import copy
import math

import numpy as np
import yaml

from .exceptions import ConfigError, VarLpError
from .generators import log_holder_exponent, prolongate, step_exponent
from .grid import (GridFunction, ReciprocalExponent, as_fraction,
                   constant_exponent, indicator, make_cube, make_grid)

__all__ = ('ScenarioConfig', 'parse_config', 'load_config', 'serialize',
           'PARAM_DEFAULTS')

PARAM_DEFAULTS = {
    'rel_tol': 1e-10,
    'max_side_cells': None,
    'k_list': [2, 3, 5, 10, 20, 50],
    'samples': 100,
    'seed': 0,
    'gamma': None,
    'p_inf_reciprocal': None,
    'suites': None,
    'suite_scale': 1.0,
    'refinements': 2,
    'sequence': 'approximation',
}

_TOP = {'id', 'grid', 'exponent', 'function', 'params'}
_GRID = {'n', 'M', 'origin', 'cells'}
_EXP = {
    'constant': {'type', 'value'},
    'step': {'type', 'tail', 'pieces'},
    'log_holder': {'type', 'base', 'amplitude', 'c_log', 'center'},
    'reciprocal_table': {'type', 'values', 'tail'},
}
_FUN = {
    'constant': {'type', 'value'},
    'indicator': {'type', 'lower', 'side', 'value'},
    'spikes': {'type', 'spikes'},
    'random': {'type', 'seed', 'scale', 'density'},
}
_SEQUENCES = ('approximation', 'oscillating')


class _Errors:
    def __init__(self):
        self.items = []

    def add(self, where, msg):
        self.items.append(f'{where}: {msg}')


def _exponent_value(x, where, err):
    """Exponent ``p`` in ``[1, inf]``; returns ``None`` on error."""
    if isinstance(x, str) and x.strip().lower() in ('inf', 'infinity'):
        return math.inf
    try:
        v = float(x)
    except (TypeError, ValueError):
        err.add(where, f'exponent {x!r} is not a number or "inf"')
        return None
    if not v >= 1:
        err.add(where, f'exponent {v} outside [1, inf]')
        return None
    return v


def _reciprocal(x, where, err):
    try:
        v = float(x)
    except (TypeError, ValueError):
        err.add(where, f'reciprocal {x!r} is not a number')
        return None
    if not 0 <= v <= 1:
        err.add(where, f'reciprocal {v} outside [0, 1]')
        return None
    return v


def _unknown(d, allowed, where, err):
    for k in sorted(set(d) - allowed, key=str):
        err.add(f'{where}.{k}' if where else str(k), 'unknown key')


def _need(d, keys, where, err):
    ok = True
    for k in keys:
        if k not in d:
            err.add(f'{where}.{k}', 'missing')
            ok = False
    return ok


def _coord(x, where, err):
    if isinstance(x, (list, tuple)):
        return [_coord(c, f'{where}[{i}]', err) for i, c in enumerate(x)]
    try:
        as_fraction(x)
    except (ValueError, ZeroDivisionError, TypeError, VarLpError):
        err.add(where, f'coordinate {x!r} is not a number')
        return None
    if isinstance(x, str):
        return x.strip()
    return x


def _norm_exp_value(v):
    return 'inf' if math.isinf(v) else float(v)


def _check_grid(d, err):
    if not isinstance(d, dict):
        err.add('grid', 'must be a mapping')
        return None, None
    _unknown(d, _GRID, 'grid', err)
    if not _need(d, ('n', 'M', 'origin', 'cells'), 'grid', err):
        return None, None
    out = {'n': d['n'], 'M': d['M'], 'origin': _coord(d['origin'],
                                                     'grid.origin', err),
           'cells': d['cells']}
    try:
        g = make_grid(d['n'], d['M'], out['origin'], d['cells'])
    except (VarLpError, TypeError, ValueError) as e:
        err.add('grid', str(e))
        return out, None
    return out, g


def _cube(grid, spec, where, err):
    try:
        return make_cube(grid, spec['lower'], spec['side'])
    except (VarLpError, TypeError, ValueError, KeyError) as e:
        err.add(where, f'misaligned or malformed cube: {e}')
        return None


def _check_exponent(d, grid, err):
    if not isinstance(d, dict) or d.get('type') not in _EXP:
        err.add('exponent.type', f'must be one of {sorted(_EXP)}')
        return None
    t = d['type']
    _unknown(d, _EXP[t], 'exponent', err)
    out = {'type': t}
    if t == 'constant':
        if _need(d, ('value',), 'exponent', err):
            v = _exponent_value(d['value'], 'exponent.value', err)
            out['value'] = None if v is None else _norm_exp_value(v)
    elif t == 'step':
        if not _need(d, ('tail', 'pieces'), 'exponent', err):
            return out
        v = _exponent_value(d['tail'], 'exponent.tail', err)
        out['tail'] = None if v is None else _norm_exp_value(v)
        pieces = []
        cubes = []
        for i, pc in enumerate(d['pieces'] or []):
            where = f'exponent.pieces[{i}]'
            if not isinstance(pc, dict):
                err.add(where, 'must be a mapping')
                continue
            _unknown(pc, {'lower', 'side', 'value'}, where, err)
            if not _need(pc, ('lower', 'side', 'value'), where, err):
                continue
            pv = _exponent_value(pc['value'], f'{where}.value', err)
            item = {'lower': _coord(pc['lower'], f'{where}.lower', err),
                    'side': _coord(pc['side'], f'{where}.side', err),
                    'value': None if pv is None else _norm_exp_value(pv)}
            pieces.append(item)
            if grid is not None:
                c = _cube(grid, pc, where, err)
                if c is not None:
                    for j, other in cubes:
                        if _overlap(c, other):
                            err.add(where, f'overlaps exponent.pieces[{j}]')
                    cubes.append((i, c))
        out['pieces'] = pieces
    elif t == 'log_holder':
        if not _need(d, ('base', 'amplitude', 'c_log'), 'exponent', err):
            return out
        out['base'] = _reciprocal(d['base'], 'exponent.base', err)
        for k in ('amplitude', 'c_log'):
            try:
                out[k] = float(d[k])
            except (TypeError, ValueError):
                err.add(f'exponent.{k}', 'must be a number')
        if 'center' in d:
            out['center'] = _coord(d['center'], 'exponent.center', err)
    else:
        if not _need(d, ('values', 'tail'), 'exponent', err):
            return out
        out['tail'] = _reciprocal(d['tail'], 'exponent.tail', err)
        vals = np.asarray(d['values'], dtype=object)
        flat = []
        for idx in np.ndindex(vals.shape):
            where = 'exponent.values' + ''.join(f'[{i}]' for i in idx)
            flat.append(_reciprocal(vals[idx], where, err))
        if grid is not None and vals.shape != grid.shape:
            err.add('exponent.values', f'shape {vals.shape} differs from '
                    f'the grid shape {grid.shape}')
        out['values'] = np.array(flat, dtype=object).reshape(
            vals.shape).tolist()
    return out


def _overlap(a, b):
    return all(max(sa, sb) < min(sa + a.side, sb + b.side)
               for sa, sb in zip(a.start, b.start))


def _number(d, key, where, err, default=None):
    if key not in d:
        return default
    try:
        return float(d[key])
    except (TypeError, ValueError):
        err.add(f'{where}.{key}', 'must be a number')
        return None


def _check_function(d, grid, err):
    if not isinstance(d, dict) or d.get('type') not in _FUN:
        err.add('function.type', f'must be one of {sorted(_FUN)}')
        return None
    t = d['type']
    _unknown(d, _FUN[t], 'function', err)
    out = {'type': t}
    if t == 'constant':
        if _need(d, ('value',), 'function', err):
            out['value'] = _number(d, 'value', 'function', err)
    elif t == 'indicator':
        if _need(d, ('lower', 'side'), 'function', err):
            out['lower'] = _coord(d['lower'], 'function.lower', err)
            out['side'] = _coord(d['side'], 'function.side', err)
            out['value'] = _number(d, 'value', 'function', err, 1.0)
            if grid is not None:
                _cube(grid, d, 'function', err)
    elif t == 'spikes':
        if _need(d, ('spikes',), 'function', err):
            sp = []
            for i, s in enumerate(d['spikes'] or []):
                where = f'function.spikes[{i}]'
                if not isinstance(s, dict):
                    err.add(where, 'must be a mapping')
                    continue
                _unknown(s, {'at', 'mass'}, where, err)
                if _need(s, ('at', 'mass'), where, err):
                    sp.append({'at': _coord(s['at'], f'{where}.at', err),
                               'mass': _number(s, 'mass', where, err)})
            out['spikes'] = sp
    else:
        if _need(d, ('seed',), 'function', err):
            try:
                out['seed'] = int(d['seed'])
            except (TypeError, ValueError):
                err.add('function.seed', 'must be an integer')
            out['scale'] = _number(d, 'scale', 'function', err, 10.0)
            out['density'] = _number(d, 'density', 'function', err, 1.0)
    return out


def _check_params(d, err):
    if d is None:
        d = {}
    if not isinstance(d, dict):
        err.add('params', 'must be a mapping')
        return dict(PARAM_DEFAULTS)
    _unknown(d, set(PARAM_DEFAULTS), 'params', err)
    out = dict(PARAM_DEFAULTS)
    for k, v in d.items():
        if k not in PARAM_DEFAULTS:
            continue
        out[k] = v
    rt = out['rel_tol']
    try:
        if not 0 < float(rt) < 0.5:
            err.add('params.rel_tol', 'must lie in (0, 1/2)')
        out['rel_tol'] = float(rt)
    except (TypeError, ValueError):
        err.add('params.rel_tol', 'must be a number')
    if out['sequence'] not in _SEQUENCES:
        err.add('params.sequence', f'must be one of {list(_SEQUENCES)}')
    if out['p_inf_reciprocal'] is not None:
        out['p_inf_reciprocal'] = _reciprocal(
            out['p_inf_reciprocal'], 'params.p_inf_reciprocal', err)
    if out['suites'] is not None:
        from .suites import SUITES
        for s in out['suites']:
            if s not in SUITES:
                err.add('params.suites', f'unknown suite {s!r}')
    for k in ('seed', 'samples', 'refinements'):
        try:
            out[k] = int(out[k])
        except (TypeError, ValueError):
            err.add(f'params.{k}', 'must be an integer')
    out['k_list'] = [int(k) for k in out['k_list']]
    out['suite_scale'] = float(out['suite_scale'])
    if out['gamma'] is not None:
        out['gamma'] = float(out['gamma'])
        if not out['gamma'] > 1:
            err.add('params.gamma', 'must exceed 1')
    return out


@dataclass
class ScenarioConfig:
    """Validated scenario; sections are plain normalized mappings."""

    id: str
    grid: dict
    exponent: dict
    function: dict
    params: dict = field(default_factory=lambda: dict(PARAM_DEFAULTS))

    def to_dict(self):
        return copy.deepcopy({'id': self.id, 'grid': self.grid,
                              'exponent': self.exponent,
                              'function': self.function,
                              'params': self.params})

    def build_grid(self, refine=0):
        g = self.grid
        cells = g['cells']
        cells = [c * 2**refine for c in cells] if isinstance(
            cells, (list, tuple)) else cells * 2**refine
        return make_grid(g['n'], g['M'] + refine, g['origin'], cells)

    def build_exponent(self, grid):
        e = self.exponent
        t = e['type']
        if t == 'constant':
            return constant_exponent(grid, _pval(e['value']))
        if t == 'step':
            pieces = [(make_cube(grid, pc['lower'], pc['side']),
                       _pval(pc['value'])) for pc in e['pieces']]
            return step_exponent(grid, pieces, _pval(e['tail']))
        if t == 'log_holder':
            return log_holder_exponent(
                grid, e['base'], e['amplitude'], e['c_log'],
                None if 'center' not in e
                else [float(as_fraction(c)) for c in e['center']])
        base = self.build_grid()
        p = ReciprocalExponent(base, np.array(e['values'], dtype=float),
                               e['tail'])
        return prolongate(p, grid.M - base.M) if grid.M > base.M else p

    def build_function(self, grid):
        fs = self.function
        t = fs['type']
        if t == 'constant':
            return GridFunction(grid, np.full(grid.shape, fs['value']))
        if t == 'indicator':
            return indicator(grid, make_cube(grid, fs['lower'], fs['side'])) \
                * fs['value']
        if t == 'spikes':
            vals = np.zeros(grid.shape)
            for s in fs['spikes']:
                at = s['at'] if isinstance(s['at'], list) else [s['at']]
                idx = tuple(int(math.floor(float(as_fraction(x)) / grid.h
                                           + 1e-9)) - st
                            for x, st in zip(at, grid.start))
                if all(0 <= i < c for i, c in zip(idx, grid.cells)):
                    vals[idx] += s['mass'] / grid.cell_volume
            return GridFunction(grid, vals)
        base = self.build_grid()
        rng = np.random.default_rng(fs['seed'])
        vals = rng.uniform(-fs['scale'], fs['scale'], base.shape)
        vals *= rng.random(base.shape) < fs['density']
        f = GridFunction(base, vals)
        return prolongate(f, grid.M - base.M) if grid.M > base.M else f


def _pval(v):
    return math.inf if v == 'inf' else float(v)


def parse_config(text):
    """Validate a YAML document; raise :class:`ConfigError` listing all errors.

    Parameters
    ----------
    text : str
        UTF-8 YAML text, or an already loaded mapping.
    """
    err = _Errors()
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError([f'document: not valid YAML ({e})']) from None
    if not isinstance(doc, dict):
        raise ConfigError(['document: top level must be a mapping'])
    _unknown(doc, _TOP, '', err)
    sid = doc.get('id', 'scenario')
    if not isinstance(sid, str):
        err.add('id', 'must be text')
        sid = str(sid)
    for k in ('grid', 'exponent', 'function'):
        if k not in doc:
            err.add(k, 'missing')
    grid_d, grid = _check_grid(doc.get('grid'), err) if 'grid' in doc \
        else (None, None)
    exp = _check_exponent(doc['exponent'], grid, err) \
        if 'exponent' in doc else None
    fun = _check_function(doc['function'], grid, err) \
        if 'function' in doc else None
    params = _check_params(doc.get('params'), err)
    if err.items:
        raise ConfigError(err.items)
    return ScenarioConfig(sid, grid_d, exp, fun, params)


def load_config(path):
    with open(path, encoding='utf-8') as fh:
        return parse_config(fh.read())


def serialize(cfg):
    """YAML text that parses back to an equal :class:`ScenarioConfig`."""
    return yaml.safe_dump(cfg.to_dict(), sort_keys=True,
                          default_flow_style=None, allow_unicode=True)
