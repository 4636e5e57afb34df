"""Muckenhoupt and Nekvinda constants and the lemma-level class checks.

The Muckenhoupt constant ``[p]_A`` is a maximum over all cell-aligned cubes
of ``||1_Q||_p ||1_Q||_p' / |Q|``.  The indicator norms of all cubes are
solved together: a cube enters only through the measure it assigns to each
distinct exponent value, so one vectorized log-scale bisection over the
cube axis handles the whole family.
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import DomainError, PreconditionError
from .grid import (Cube, GridFunction, bounds_on, deviation_exponent,
                   indicator)
from .luxemburg import DEFAULT_RTOL, conjugate_witness, norm, norm_arrays
from .reports import InequalityReport, digest

__all__ = ('ClassConstants', 'enumerate_cubes', 'enumerate_region', 'indicator_norms',
           'cube_ratios', 'muckenhoupt_constant', 'nekvinda_constant',
           'best_p_infinity', 'class_constants', 'averaging_operator_check',
           'a_infinity_check', 'avgmodular_check', 'random_subcube')

_BISECT_STEPS = 80


@dataclass(frozen=True)
class ClassConstants:
    a_const: float
    n_const: float
    p_inf_reciprocal: float
    max_side_cells: int
    cube_count: int


def _region(grid, within):
    if within is None:
        return grid.start, grid.cells
    if not within.inside(grid):
        raise DomainError('reference cube must lie inside the box')
    return within.start, (within.side,) * grid.n


def enumerate_region(start, ext, max_side_cells=None):
    """All cubes inside the lattice box ``start + [0, ext)``.

    Returns ``(starts, sides)``: an ``(C, n)`` integer array of lattice
    lower corners and a length ``C`` array of sides in cells.
    """
    smax = min(ext)
    if max_side_cells is not None:
        smax = min(smax, int(max_side_cells))
    starts, sides = [], []
    for s in range(1, smax + 1):
        axes = [np.arange(st, st + e - s + 1) for st, e in zip(start, ext)]
        mesh = np.meshgrid(*axes, indexing='ij')
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        starts.append(pts)
        sides.append(np.full(len(pts), s))
    return np.concatenate(starts).astype(np.int64), np.concatenate(sides)


def enumerate_cubes(grid, max_side_cells=None, within=None):
    """All cell-aligned cubes inside the box (or inside ``within``)."""
    start, ext = _region(grid, within)
    return enumerate_region(start, ext, max_side_cells)


def _value_measures(p, starts, sides):
    """Measure each cube gives to each distinct ``(u, v)`` pair (tail last)."""
    grid = p.grid
    n = grid.n
    pairs = np.stack([p.u.ravel(), p.v.ravel()], axis=1)
    keys, inv = np.unique(pairs, axis=0, return_inverse=True)
    inv = inv.reshape(grid.shape)
    V = len(keys)
    onehot = (inv[None, ...] == np.arange(V).reshape((V,) + (1,) * n))
    P = np.zeros((V,) + tuple(c + 1 for c in grid.cells), dtype=np.int64)
    if n == 1:
        P[:, 1:] = np.cumsum(onehot, axis=1)
    else:
        P[:, 1:, 1:] = np.cumsum(np.cumsum(onehot, axis=1), axis=2)
    lo = np.empty_like(starts)
    hi = np.empty_like(starts)
    for d in range(n):
        lo[:, d] = np.clip(starts[:, d] - grid.start[d], 0, grid.cells[d])
        hi[:, d] = np.clip(starts[:, d] + sides - grid.start[d], 0,
                           grid.cells[d])
    if n == 1:
        counts = P[:, hi[:, 0]] - P[:, lo[:, 0]]
    else:
        counts = (P[:, hi[:, 0], hi[:, 1]] - P[:, lo[:, 0], hi[:, 1]]
                  - P[:, hi[:, 0], lo[:, 1]] + P[:, lo[:, 0], lo[:, 1]])
    counts = counts.T
    outside = sides.astype(np.int64) ** n - counts.sum(axis=1)
    counts = np.concatenate([counts, outside[:, None]], axis=1)
    u_vals = np.append(keys[:, 0], p.u_tail)
    v_vals = np.append(keys[:, 1], p.v_tail)
    return counts, u_vals, v_vals


def _solve_indicator_norms(counts, r, vol):
    """Vectorized ``||1_Q||`` for every row of ``counts`` (reciprocals ``r``)."""
    W = counts * vol
    present = counts > 0
    meas = W.sum(axis=1)
    lnQ = np.log(meas)
    rl = np.where(present, r[None, :] * lnQ[:, None], np.nan)
    lo = np.nanmin(rl, axis=1)
    hi = np.nanmax(rl, axis=1)
    single = (present.sum(axis=1) == 1) | (
        np.nanmax(np.where(present, r, np.nan), axis=1)
        == np.nanmin(np.where(present, r, np.nan), axis=1))
    has_inf = (present & (r[None, :] == 0)).any(axis=1)
    fin = present & (r[None, :] > 0)
    with np.errstate(over='ignore'):
        inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
    todo = ~single
    if todo.any():
        Wt, ft, hit = W[todo], fin[todo], has_inf[todo]
        a, b = lo[todo].copy(), hi[todo].copy()
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (a + b)
            with np.errstate(over='ignore', invalid='ignore'):
                terms = np.where(ft, Wt * np.exp(-mid[:, None] * inv_r), 0.0)
            F = terms.sum(axis=1)
            F = np.where(hit & (mid < 0), np.inf, F)
            ok = F <= 1.0
            b = np.where(ok, mid, b)
            a = np.where(ok, a, mid)
        hi = hi.copy()
        hi[todo] = b
    out = np.exp(hi)
    rs = np.nanmax(np.where(present, r, np.nan), axis=1)
    out[single] = meas[single] ** rs[single]
    return out, meas, single


def indicator_norms(p, starts, sides):
    """``(||1_Q||_p, ||1_Q||_p', |Q|)`` for cubes given by lattice data.

    Cubes may stick out of the box; the outside part carries the tail
    exponent.
    """
    counts, u_vals, v_vals = _value_measures(p, np.asarray(starts),
                                             np.asarray(sides))
    vol = p.grid.cell_volume
    nu, meas, single = _solve_indicator_norms(counts, u_vals, vol)
    nv, _, _ = _solve_indicator_norms(counts, v_vals, vol)
    return nu, nv, meas, single


def cube_ratios(p, max_side_cells=None, within=None):
    """Ratios ``||1_Q||_p ||1_Q||_p' / |Q|`` over the enumerated family."""
    starts, sides = enumerate_cubes(p.grid, max_side_cells, within)
    nu, nv, meas, single = indicator_norms(p, starts, sides)
    ratios = nu * nv / meas
    ratios[single] = 1.0
    return starts, sides, ratios


def muckenhoupt_constant(p, max_side_cells=None, within=None):
    """``[p]_A`` over all aligned cubes with side at most ``max_side_cells``.

    Cubes are restricted to the box (or to the cube ``within``).  For a
    constant tail the cubes far outside the box have ratio exactly 1, which
    never exceeds the value returned here (it is at least 1/2 and equals 1
    for one-cell cubes).
    """
    _, _, ratios = cube_ratios(p, max_side_cells, within)
    return float(ratios.max())


def _argmax_cube(p, max_side_cells=None, within=None):
    starts, sides, ratios = cube_ratios(p, max_side_cells, within)
    i = int(np.argmax(ratios))
    return Cube(tuple(int(x) for x in starts[i]), int(sides[i]), p.grid.M), \
        float(ratios[i])


def nekvinda_constant(p, p_inf_reciprocal, rel_tol=DEFAULT_RTOL):
    """``[p]_N = ||1||_s`` with ``1/s = |1/p - 1/p_inf|`` over the whole space.

    The tail has infinite measure: unless ``1/p`` equals ``1/p_inf`` there
    the constant is infinite, and when it does the tail forces
    ``[p]_N >= 1``.
    """
    ui = float(p_inf_reciprocal)
    s = deviation_exponent(p, ui)
    if p.u_tail != ui:
        return math.inf
    box = norm_arrays(_rho(), np.ones(p.grid.size), s.u.ravel(),
                      p.grid.cell_volume, rel_tol)[0]
    return max(1.0, box)


def _rho():
    from .modulars import ModularKind
    return ModularKind.RHO


def best_p_infinity(p, grid_points=101):
    """Scan reciprocals ``j / (grid_points - 1)`` for the smallest ``[p]_N``.

    The tail reciprocal is always a candidate: with a constant tail it is
    the only value giving a finite constant.
    """
    if grid_points < 2:
        raise DomainError('grid_points must be >= 2')
    best = (None, math.inf)
    cands = sorted({j / (grid_points - 1) for j in range(grid_points)}
                   | {p.u_tail})
    for ui in cands:
        val = nekvinda_constant(p, ui)
        if val < best[1]:
            best = (ui, val)
    if best[0] is None:
        best = (0.0, math.inf)
    return best


def class_constants(p, max_side_cells=None, p_inf_reciprocal=None):
    """Both class constants; ``p_inf`` defaults to the tail value."""
    ui = p.u_tail if p_inf_reciprocal is None else p_inf_reciprocal
    starts, _, ratios = cube_ratios(p, max_side_cells)
    side = min(p.grid.cells) if max_side_cells is None else max_side_cells
    return ClassConstants(float(ratios.max()), nekvinda_constant(p, ui), ui,
                          int(side), len(starts))


def random_subcube(rng, grid, within=None, max_side=None):
    """Uniformly random aligned cube inside the box or inside ``within``."""
    start, ext = _region(grid, within)
    smax = min(ext) if max_side is None else min(min(ext), max_side)
    s = int(rng.integers(1, smax + 1))
    lo = tuple(int(st + rng.integers(0, e - s + 1))
               for st, e in zip(start, ext))
    return Cube(lo, s, grid.M)


def _avg_op_norm(f, cube, p):
    return f.average(cube) * norm(indicator(p.grid, cube), p)


def averaging_operator_check(p, samples=100, seed=0, max_side_cells=None,
                             eps=1e-3):
    """Uniform bounds for ``T_Q f = 1_Q * mean_Q |f|`` on the unit ball.

    Random pairs ``(Q, f)`` test ``||T_Q f||_p <= 2 [p]_A``.  The witness
    family (``1_Q / ||1_Q||`` and the conjugate witness of ``1_Q`` for the
    extremal cube) tests that the observed supremum reaches
    ``(1 - eps) [p]_A / 2``.
    """
    grid = p.grid
    rng = np.random.default_rng(seed)
    qstar, A = _argmax_cube(p, max_side_cells)
    worst = 0.0
    for _ in range(samples):
        Q = random_subcube(rng, grid, max_side=max_side_cells)
        vals = rng.uniform(-10, 10, grid.shape)
        vals *= rng.random(grid.shape) < rng.uniform(0.2, 1.0)
        f = GridFunction(grid, vals)
        if f.is_zero():
            continue
        f = f / norm(f, p)
        worst = max(worst, _avg_op_norm(f, Q, p))
    one = indicator(grid, qstar)
    lower = one / norm(one, p)
    w = conjugate_witness(one, p.dual(), eps)
    observed = max(_avg_op_norm(lower, qstar, p), _avg_op_norm(w, qstar, p))
    worst = max(worst, observed)
    up = InequalityReport.compare('averaging_upper', worst, 2 * A, 2.0,
                                  digest(p.u, seed), samples=samples,
                                  a_const=A, witness_value=observed,
                                  lower_target=(1 - eps) * A / 2)
    low_ok = observed >= (1 - eps) * A / 2 * (1 - 1e-6)
    if not low_ok:
        up = InequalityReport(up.name, up.lhs, up.rhs, up.constant, False,
                              up.instance, up.details)
    return up


def a_infinity_check(q, t, Q, trials=100, seed=0):
    """Check ``w(E) >= beta w(Q')`` for ``w = t**q(x)`` and ``|E| >= |Q'|/2``.

    ``beta = 1 / max((32 A^2)^{q+}, 2 (8 A)^{q+})`` with ``A = [q]_A`` over
    the sub-cubes of ``Q`` and ``q+`` the supremum of ``q`` on ``Q``.
    The report's ``lhs`` is the largest observed ``beta w(Q') / w(E)``.
    """
    grid = q.grid
    q_minus, q_plus = bounds_on(q, Q)
    if not (1 < q_minus and math.isfinite(q_plus)):
        raise PreconditionError('need 1 < q^- <= q^+ < inf on Q')
    A = muckenhoupt_constant(q, within=Q)
    nQ = norm(indicator(grid, Q), q)
    t_max = 2 * A / nQ
    if not 1 <= t <= t_max:
        raise PreconditionError(f't = {t} outside [1, {t_max}]')
    beta = 1.0 / max((32 * A * A) ** q_plus, 2 * (8 * A) ** q_plus)
    w = np.power(float(t), q.p)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        Qp = random_subcube(rng, grid, within=Q)
        sub = w[Qp.slices(grid)].ravel()
        K = sub.size
        m = int(rng.integers((K + 1) // 2, K + 1))
        chosen = rng.choice(K, size=m, replace=False)
        wE = sub[chosen].sum()
        worst = max(worst, beta * sub.sum() / wE)
    return InequalityReport.compare('a_infinity', worst, 1.0, beta,
                                    digest(q.u, t, seed), slack=0.0,
                                    a_const=A, q_plus=q_plus, trials=trials)


def avgmodular_check(p, f, Q):
    """``int_Q (lam |f|_Q)^p <= int_Q |2f|^p`` with ``lam = min(1/2, 1/(2A))``.

    Hypotheses (checked, raising :class:`PreconditionError`):
    ``1 < p^- <= p^+ < inf`` on ``Q``, ``|f|_Q >= 1`` and
    ``||f 1_Q||_p <= 1/2``.  ``A`` is ``[p]_A`` over the sub-cubes of ``Q``.
    """
    grid = p.grid
    p_minus, p_plus = bounds_on(p, Q)
    if not (1 < p_minus and math.isfinite(p_plus)):
        raise PreconditionError('need 1 < p^- <= p^+ < inf on Q')
    fQ = f.restricted(Q)
    avg = f.average(Q)
    if avg < 1:
        raise PreconditionError(f'average {avg} of |f| over Q is below 1')
    nf = norm(fQ, p)
    if nf > 0.5:
        raise PreconditionError(f'||f 1_Q|| = {nf} exceeds 1/2')
    A = muckenhoupt_constant(p, within=Q)
    lam = min(0.5, 1.0 / (2 * A))
    sl = Q.slices(grid)
    pq = p.p[sl]
    vol = grid.cell_volume
    lhs = vol * float(np.power(lam * avg, pq).sum())
    rhs = vol * float(np.power(2 * np.abs(f.values[sl]), pq).sum())
    return InequalityReport.compare('avgmodular', lhs, rhs, 1.0,
                                    digest(p.u, f.values, Q.start, Q.side),
                                    a_const=A, average=avg, norm=nf)
