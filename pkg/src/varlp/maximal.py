"""Maximal operators, shifted dyadic grids and Calderon-Zygmund machinery.

Dyadic cubes of level ``m`` in the grid with shift ``alpha = a/3`` are
``2**-m ([0,1)^n + j + (-1)**m alpha)``.  In lattice units of a grid of
level ``M`` their side is ``3 * 2**(M-m)`` and their corners sit at
``(-1)**m * a * 2**(M-m)`` modulo the side, so for ``m <= M`` every cube
is a union of cells.  Sums over a level are built from the level below
(parent = sum of children), which keeps ``avg(child) <= 2**n avg(parent)``
exact in floating point.
"""

from dataclasses import dataclass, field
import itertools
import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import (AlignmentError, DegenerateInputError, DomainError,
                         GridMismatchError, PreconditionError)
from .grid import Cube, GridFunction, essential_bounds
from .luxemburg import norm
from .reports import InequalityReport, digest

__all__ = ('DyadicGridId', 'maximal_function', 'dyadic_maximal',
           'dyadic_levels', 'three_grid_bound', 'CZCube', 'CZDecomposition',
           'cz_decompose', 'operator_T', 'operator_T_l', 'duality_chain',
           'tl_decay_check', 'calibrate_c0', 'maximal_ratio',
           'default_scale_range', 'realized_shifts')


@dataclass(frozen=True)
class DyadicGridId:
    """Shifted dyadic grid: shift numerators ``a`` (``alpha = a/3``) and scales.

    Scales run from ``m_min`` (coarsest) to ``m_max`` (finest); ``None``
    picks the defaults of :func:`default_scale_range` for the grid at hand.
    """

    shift: tuple
    m_min: int = None
    m_max: int = None

    def __post_init__(self):
        sh = tuple(int(a) for a in self.shift)
        if any(a not in (0, 1, 2) for a in sh):
            raise AlignmentError(f'shift numerators must be 0, 1 or 2: {sh}')
        object.__setattr__(self, 'shift', sh)

    @classmethod
    def from_alpha(cls, alpha, m_min=None, m_max=None):
        """Build from shift components given as ``0``, ``1/3`` or ``2/3``."""
        from .grid import as_fraction
        nums = []
        for x in alpha:
            q = as_fraction(x) * 3
            if q.denominator != 1 or q not in (0, 1, 2):
                raise AlignmentError(f'shift {x!r} is not in {{0, 1/3, 2/3}}')
            nums.append(int(q))
        return cls(tuple(nums), m_min, m_max)

    @property
    def alpha(self):
        from fractions import Fraction
        return tuple(Fraction(a, 3) for a in self.shift)


def default_scale_range(grid):
    """``(-(ceil(log2 L) + 2), M)`` with ``L`` the longest box side."""
    L = max(grid.cells) * grid.h
    return -(math.ceil(math.log2(L)) + 2), grid.M


def _resolve(D, grid):
    if len(D.shift) != grid.n:
        raise GridMismatchError('shift dimension differs from the grid')
    lo, hi = default_scale_range(grid)
    m_min = lo if D.m_min is None else int(D.m_min)
    m_max = hi if D.m_max is None else int(D.m_max)
    if m_max > grid.M:
        raise AlignmentError(
            f'scale {m_max} is finer than the grid level {grid.M}')
    if m_min > m_max:
        raise DomainError(f'empty scale range [{m_min}, {m_max}]')
    return m_min, m_max


def _level_geometry(grid, a, m):
    """Side and per-axis corner offset (lattice units) of level ``m``."""
    side = 3 * 2 ** (grid.M - m)
    sign = 1 if m % 2 == 0 else -1
    offs = tuple((sign * ai * 2 ** (grid.M - m)) % side for ai in a)
    return side, offs


@dataclass
class _Level:
    m: int
    side: int
    offs: tuple
    jmin: tuple
    sums: np.ndarray
    cell_index: tuple  # per axis, cube index of each box cell

    @property
    def averages(self):
        return self.sums / float(self.side) ** len(self.offs)

    def cube(self, idx, M):
        start = tuple(o + self.side * (j0 + j)
                      for o, j0, j in zip(self.offs, self.jmin, idx))
        return Cube(start, self.side, M)


def _axis_index(grid, d, side, off):
    x = grid.start[d] + np.arange(grid.cells[d])
    return (x - off) // side


def dyadic_levels(f, D):
    """Hierarchical cube sums of ``|f|`` for every scale of ``D`` (fine first)."""
    grid = f.grid
    m_min, m_max = _resolve(D, grid)
    return _build_levels(np.abs(f.values), grid, D.shift, m_min, m_max)


def _build_levels(a, grid, shift, m_min, m_max, levels=None):
    n = grid.n
    if levels is None:
        side, offs = _level_geometry(grid, shift, m_max)
        idx = [_axis_index(grid, d, side, offs[d]) for d in range(n)]
        jmin = tuple(int(i.min()) for i in idx)
        loc = tuple(i - j0 for i, j0 in zip(idx, jmin))
        shape = tuple(int(i.max()) + 1 for i in loc)
        sums = np.zeros(shape)
        np.add.at(sums, np.ix_(*loc), a)
        levels = [_Level(m_max, side, offs, jmin, sums, loc)]
    for m in range(levels[-1].m - 1, m_min - 1, -1):
        child = levels[-1]
        side, offs = _level_geometry(grid, shift, m)
        idx = [_axis_index(grid, d, side, offs[d]) for d in range(n)]
        jmin = tuple(int(i.min()) for i in idx)
        loc = tuple(i - j0 for i, j0 in zip(idx, jmin))
        shape = tuple(int(i.max()) + 1 for i in loc)
        pmap = []
        for d in range(n):
            corners = child.offs[d] + child.side * (
                child.jmin[d] + np.arange(child.sums.shape[d]))
            pmap.append((corners - offs[d]) // side - jmin[d])
        sums = np.zeros(shape)
        np.add.at(sums, np.ix_(*pmap), child.sums)
        levels.append(_Level(m, side, offs, jmin, sums, loc))
    return levels


def _cell_averages(level):
    return level.averages[np.ix_(*level.cell_index)]


def dyadic_maximal(f, D):
    """Dyadic maximal function of ``f`` over the cubes of ``D``.

    Per cell, the largest average of ``|f|`` over the cubes of ``D`` with
    scales in range that contain it (``f`` is 0 outside the box).

    Raises
    ------
    AlignmentError
        If the finest scale is finer than the grid level.
    """
    levels = dyadic_levels(f, D)
    out = np.zeros(f.grid.shape)
    for lv in levels:
        np.maximum(out, _cell_averages(lv), out=out)
    return GridFunction(f.grid, out)


def _window_sums(a, s):
    """Sums of ``a`` (zero padded) over all windows of side ``s`` meeting it."""
    n = a.ndim
    # extended precision keeps differences of prefix sums close to the
    # directly summed window values
    P = np.pad(a.astype(np.longdouble), [(s - 1, s - 1)] * n)
    for d in range(n):
        c = np.cumsum(P, axis=d)
        zero = np.zeros_like(np.take(c, [0], axis=d))
        c = np.concatenate([zero, c], axis=d)
        hi = np.take(c, np.arange(s, c.shape[d]), axis=d)
        lo = np.take(c, np.arange(0, c.shape[d] - s), axis=d)
        P = hi - lo
    return P.astype(float)


def maximal_function(f, max_side=None):
    """Uncentered maximal function over cell-aligned cubes.

    For every cell, the largest average of ``|f|`` over aligned cubes that
    contain the cell, with sides from one cell up to ``max_side`` cells
    (default three times the longest box side).  Cubes may leave the box;
    ``f`` counts as 0 there.

    Window sums come from prefix sums of the zero-padded array, so each side
    costs ``O(cells)``; the sums are accumulated in extended precision.
    """
    a = np.abs(f.values)
    N = max(f.grid.cells)
    smax = 3 * N if max_side is None else int(max_side)
    out = a.copy()  # single-cell cubes
    n = a.ndim
    for s in range(2, smax + 1):
        W = _window_sums(a, s)
        for d in range(n):
            W = sliding_window_view(W, s, axis=d).max(axis=-1)
        np.maximum(out, W / float(s) ** n, out=out)
    return GridFunction(f.grid, out)


def _all_shifts(n):
    return list(itertools.product((0, 1, 2), repeat=n))


def three_grid_bound(f):
    """Pointwise ``Mf <= 6^n sum_alpha M^{D_alpha} f`` over the ``3^n`` shifts.

    The dyadic scale range reaches sides ``18 L`` (``L`` the longest box
    side), enough to cover every cube used by :func:`maximal_function`.
    The report's ``lhs`` is the largest pointwise ratio.
    """
    grid = f.grid
    n = grid.n
    L = max(grid.cells) * grid.h
    m_min = math.floor(-math.log2(18 * L))
    Mf = maximal_function(f).values
    total = np.zeros(grid.shape)
    for a in _all_shifts(n):
        total += dyadic_maximal(f, DyadicGridId(a, m_min, grid.M)).values
    rhs = 6 ** n * total
    with np.errstate(invalid='ignore', divide='ignore'):
        ratio = np.where(Mf > 0, Mf / rhs, 0.0)
    worst = float(ratio.max())
    ok = bool(np.all(Mf <= rhs * (1 + 1e-12)))
    return InequalityReport('three_grid', worst, 1.0, 6.0 ** n, ok,
                            digest(f.values), {'m_min': m_min})


@dataclass(frozen=True)
class CZCube:
    """A maximal dyadic cube of one level of the decomposition."""

    k: int
    m: int
    cube: Cube
    average: float


@dataclass
class CZDecomposition:
    """Level sets of ``M^D f`` written as disjoint maximal dyadic cubes.

    Attributes
    ----------
    cubes : dict
        ``k -> list of CZCube``, the cubes ``Q_j^k`` of level ``k``.
    owner : dict
        ``k -> int array`` over box cells: index ``j`` of the cube of level
        ``k`` containing the cell, ``-1`` off ``Omega_k``.
    band : ndarray of int
        For each cell the ``k`` with the cell in ``D_k = Omega_k \\ Omega_{k+1}``;
        cells with ``M^D f = 0`` hold ``k_min - 1``.
    """

    grid: object
    dyadic: DyadicGridId
    gamma: float
    k_range: tuple
    maximal: np.ndarray
    cubes: dict = field(default_factory=dict)
    owner: dict = field(default_factory=dict)
    band: np.ndarray = None
    scale_range: tuple = None

    @property
    def levels(self):
        return list(range(self.k_range[0], self.k_range[1] + 1))

    def omega(self, k):
        if k in self.owner:
            return self.owner[k] >= 0
        return np.zeros(self.grid.shape, bool)

    def e_mask(self, k, j):
        return (self.owner[k] == j) & (self.band == k)

    def is_empty(self):
        return not any(self.cubes.values())

    def verify(self, l_max=4):
        """Re-check the structural invariants; returns a dict of booleans."""
        n = self.grid.n
        g = self.gamma
        disjoint = True
        omega_ok = True
        band_ok = True
        dyadic2 = True
        dyadic1 = True
        for k in self.levels:
            om = self.omega(k)
            omega_ok &= bool(np.array_equal(om, self.maximal > g ** k))
            cells = sum(int(np.prod([s.stop - s.start for s in
                                     c.cube.slices(self.grid)]))
                        for c in self.cubes[k])
            disjoint &= cells == int(om.sum())
            for c in self.cubes[k]:
                dyadic2 &= bool(g ** k < c.average <= 2 ** n * g ** k)
            dk = om & ~self.omega(k + 1)
            band_ok &= bool(np.array_equal(dk, self.band == k))
        for k in self.levels:
            for c in self.cubes[k]:
                vol = c.cube.side ** n
                for l in range(0, l_max + 1):
                    inner = sum(q.cube.side ** n
                                for q in self.cubes.get(k + l, ())
                                if c.cube.contains_cube(q.cube))
                    if inner * g ** l > 2 ** n * vol * (1 + 1e-12):
                        dyadic1 = False
        return {'disjoint': disjoint, 'omega': omega_ok, 'bands': band_ok,
                'dyadic2': dyadic2, 'dyadic1': dyadic1}


def _auto_k_range(md, gamma):
    pos = md[md > 0]
    if pos.size == 0:
        return None
    lg = math.log(gamma)
    k_min = math.floor(math.log(float(pos.min())) / lg)
    while gamma ** k_min >= pos.min():
        k_min -= 1
    k_max = math.ceil(math.log(float(pos.max())) / lg)
    while gamma ** k_max >= pos.max():
        k_max -= 1
    return k_min, k_max


def cz_decompose(f, D, gamma, k_range=None):
    """Calderon-Zygmund decomposition of ``|f|`` along the dyadic grid ``D``.

    For each level ``k`` the cubes are the maximal cubes of ``D`` with
    average above ``gamma**k``, found by a stopping time from the coarsest
    scale.  The coarse end of the scale range is extended until the coarsest
    averages drop to ``gamma**k_min``, so maximal cubes always exist.

    Parameters
    ----------
    f : GridFunction
    D : DyadicGridId
    gamma : float
        Ratio between consecutive levels, ``> 1``.
    k_range : tuple of int, optional
        Inclusive ``(k_min, k_max)``.  By default the smallest range whose
        bands cover every cell with ``M^D f > 0``.

    Returns
    -------
    CZDecomposition
        Empty (no cubes) when ``f = 0`` or the range lies above ``M^D f``.
    """
    gamma = float(gamma)
    if not gamma > 1:
        raise DomainError(f'gamma must exceed 1, got {gamma}')
    grid = f.grid
    a = np.abs(f.values)
    m_min, m_max = _resolve(D, grid)
    levels = _build_levels(a, grid, D.shift, m_min, m_max)
    fixed = k_range
    # coarser scales only lower the top averages; add them until the
    # coarsest level is quiet for the lowest threshold
    while True:
        md = np.zeros(grid.shape)
        for lv in levels:
            np.maximum(md, _cell_averages(lv), out=md)
        k_range = _auto_k_range(md, gamma) if fixed is None else fixed
        if k_range is None:
            return CZDecomposition(grid, D, gamma, (0, -1), md,
                                   band=np.full(grid.shape, -1),
                                   scale_range=(m_min, m_max))
        k_min, k_max = int(k_range[0]), int(k_range[1])
        if levels[-1].averages.max() <= gamma ** k_min:
            break
        levels = _build_levels(a, grid, D.shift, levels[-1].m - 1, m_max,
                               levels)
    cz = CZDecomposition(grid, D, gamma, (k_min, k_max), md,
                         scale_range=(levels[-1].m, m_max))
    coarse_first = levels[::-1]
    for k in range(k_min, k_max + 1):
        t = gamma ** k
        covered = np.zeros(grid.shape, bool)
        owner = np.full(grid.shape, -1)
        found = []
        for lv in coarse_first:
            cav = _cell_averages(lv)
            new = (cav > t) & ~covered
            if not new.any():
                continue
            ids = np.stack([np.broadcast_to(
                lv.cell_index[d].reshape([-1 if e == d else 1
                                          for e in range(grid.n)]),
                grid.shape) for d in range(grid.n)], axis=-1)
            chosen = np.unique(ids[new], axis=0)
            avg = lv.averages
            for idx in chosen:
                idx = tuple(int(i) for i in idx)
                j = len(found)
                found.append(CZCube(k, lv.m, lv.cube(idx, grid.M),
                                    float(avg[idx])))
                hit = np.all(ids == np.array(idx), axis=-1)
                owner[hit] = j
            covered |= new
        cz.cubes[k] = found
        cz.owner[k] = owner
    band = np.full(grid.shape, k_min - 1)
    for k in range(k_min, k_max + 1):
        band[cz.owner[k] >= 0] = k
    cz.band = band
    return cz


def _check_g(g, cz):
    if g.grid != cz.grid:
        raise GridMismatchError('g and the decomposition use different grids')
    if np.any(g.values < 0):
        raise DomainError('g must be nonnegative')


def _alphas(g, cz):
    """``alpha_{j,k}(g) = (1/|Q|) int_E g`` for every stored cube."""
    vals = g.values
    out = {}
    for k in cz.levels:
        e = cz.band == k
        own = cz.owner[k]
        row = []
        for j, c in enumerate(cz.cubes[k]):
            s = float(vals[(own == j) & e].sum())
            row.append(s / c.cube.side ** cz.grid.n)
        out[k] = np.array(row)
    return out


def _per_cell_alpha(k, al, cz, part):
    own = cz.owner[k]
    if al.size == 0:
        return np.zeros(cz.grid.shape)
    a = al
    if part == 1:
        a = np.where(al > 1, al, 0.0)
    elif part == 2:
        a = np.where(al > 1, 0.0, al)
    return np.where(own >= 0, a[np.maximum(own, 0)], 0.0)


def operator_T(g, cz):
    """``Tg = sum_k sum_j alpha_{j,k}(g) 1_{Q_j^k}`` on the box cells."""
    _check_g(g, cz)
    al = _alphas(g, cz)
    out = np.zeros(cz.grid.shape)
    for k in cz.levels:
        out += _per_cell_alpha(k, al[k], cz, 'all')
    return GridFunction(cz.grid, out)


def operator_T_l(g, cz, l, part='all'):
    """Level-shifted piece ``sum alpha_{j,k}(g) 1_{Q_j^k cap D_{k+l}}``.

    ``part`` selects the cubes with ``alpha > 1`` (1), ``alpha <= 1`` (2) or
    all of them.
    """
    if part not in (1, 2, 'all'):
        raise DomainError(f"part must be 1, 2 or 'all', got {part!r}")
    if l < 0:
        raise DomainError('l must be nonnegative')
    _check_g(g, cz)
    al = _alphas(g, cz)
    out = np.zeros(cz.grid.shape)
    for k in cz.levels:
        sel = cz.band == k + l
        out += np.where(sel, _per_cell_alpha(k, al[k], cz, part), 0.0)
    return GridFunction(cz.grid, out)


def realized_shifts(cz):
    """Largest ``l`` for which some ``T_l`` can be nonzero."""
    if cz.is_empty():
        return 0
    return cz.k_range[1] - cz.k_range[0]


def duality_chain(f, g, cz):
    """``int (M^D f) g <= gamma int f Tg`` for the decomposition of ``f``."""
    _check_g(g, cz)
    vol = cz.grid.cell_volume
    lhs = vol * float((cz.maximal * g.values).sum())
    Tg = operator_T(g, cz)
    rhs = cz.gamma * vol * float((np.abs(f.values) * Tg.values).sum())
    return InequalityReport.compare('duality_chain', lhs, rhs, cz.gamma,
                                    digest(f.values, g.values), slack=1e-12)


def _weight_ratios(q_dual, cz, al, lam, eps):
    """Largest ``[w(Q cap D_{k+l}) / w(Q)] / (|Q cap D_{k+l}| / |Q|)^eps``."""
    grid = cz.grid
    n = grid.n
    vol = grid.cell_volume
    pd = q_dual.p
    worst = 1.0
    for k in cz.levels:
        for j, c in enumerate(cz.cubes[k]):
            a = al[k][j]
            if not a > 1:
                continue
            inQ = cz.owner[k] == j
            t = lam * a
            w = np.power(t, pd)
            total_cells = c.cube.side ** n
            outside = total_cells - int(inQ.sum())
            wq = vol * (float(w[inQ].sum())
                        + outside * t ** q_dual.p_tail)
            for kk in range(k, cz.k_range[1] + 1):
                E = inQ & (cz.band == kk)
                cnt = int(E.sum())
                if cnt == 0:
                    continue
                frac = cnt / total_cells
                worst = max(worst, vol * float(w[E].sum()) / wq / frac ** eps)
    return worst


def _cube_family_constant(p, cubes):
    """``[p]_A`` over the sub-cubes of the bounding square of ``cubes``."""
    from .classes import enumerate_region, indicator_norms
    n = p.grid.n
    lo = [min(c.cube.start[d] for c in cubes) for d in range(n)]
    hi = [max(c.cube.start[d] + c.cube.side for c in cubes)
          for d in range(n)]
    smax = max(c.cube.side for c in cubes)
    starts, sides = enumerate_region(tuple(lo), tuple(h - l for h, l
                                                      in zip(hi, lo)), smax)
    nu, nv, meas, single = indicator_norms(p, starts, sides)
    r = nu * nv / meas
    r[single] = 1.0
    return float(r.max())


def tl_decay_check(f, g, p, cz, l_values=None, eps=0.1, c0=None):
    """Geometric decay of ``||T_l^{(m)} g||_{p'}`` for ``m = 1, 2``.

    Requires ``gamma = 3^n``, ``g >= 0`` with ``||g||_{p'} <= 1/2`` and
    ``1 < p^-``.  The bounds checked are

    * part 1: ``lam^{-1} c0 2^{eps n} 3^{-l eps n / (p')^+}`` with
      ``lam = min(1/2, 1/(2A))``, ``A`` the Muckenhoupt constant over the
      sub-cubes of the region spanned by the cubes with ``alpha > 1``;
    * part 2: ``(4N 2^n (N + 2) + 2N 2^n) 3^{-l n / (p')^+}`` with
      ``N = [p]_N`` for the tail value.

    ``c0`` defaults to the smallest admissible value for this instance's
    own sets (see :func:`calibrate_c0` for a sweep over other instances).

    Returns a list of reports, two per ``l``.
    """
    from .classes import nekvinda_constant
    grid = cz.grid
    n = grid.n
    if abs(cz.gamma - 3.0 ** n) > 1e-12:
        raise PreconditionError('the decay bounds need gamma = 3^n')
    _check_g(g, cz)
    q = p.dual()
    ng = norm(g, q)
    if ng > 0.5 * (1 + 1e-12):
        raise PreconditionError(f"||g||_p' = {ng} exceeds 1/2")
    _, qplus = essential_bounds(q)
    if math.isinf(qplus):
        raise PreconditionError("(p')^+ is infinite (p^- = 1)")
    al = _alphas(g, cz)
    big = [c for k in cz.levels for j, c in enumerate(cz.cubes[k])
           if al[k][j] > 1]
    A = _cube_family_constant(p, big) if big else 1.0
    lam = min(0.5, 1.0 / (2 * A))
    if c0 is None:
        c0 = _weight_ratios(q, cz, al, lam, eps)
    N = nekvinda_constant(p, p.u_tail)
    if l_values is None:
        l_values = range(realized_shifts(cz) + 1)
    reps = []
    inst = digest(f.values, g.values, p.u)
    for l in l_values:
        t1 = norm(operator_T_l(g, cz, l, 1), q)
        b1 = c0 * 2 ** (eps * n) * 3.0 ** (-l * eps * n / qplus) / lam
        reps.append(InequalityReport.compare('tl_part1', t1, b1, b1, inst,
                                             l=l, c0=c0, a_const=A))
        t2 = norm(operator_T_l(g, cz, l, 2), q)
        b2 = (4 * N * 2 ** n * (N + 2) + 2 * N * 2 ** n) \
            * 3.0 ** (-l * n / qplus)
        reps.append(InequalityReport.compare('tl_part2', t2, b2, b2, inst,
                                             l=l, n_const=N))
    return reps


def calibrate_c0(p, instances, eps=0.1):
    """Largest weight-ratio constant over ``(f, g)`` pairs, for later reuse.

    ``instances`` yields ``(f, g)`` with ``||g||_{p'} <= 1/2``; each ``f``
    is decomposed along the unshifted grid with ``gamma = 3^n``.
    """
    worst = 1.0
    for f, g in instances:
        n = f.grid.n
        cz = cz_decompose(f, DyadicGridId((0,) * n), 3.0 ** n)
        al = _alphas(g, cz)
        big = [c for k in cz.levels for j, c in enumerate(cz.cubes[k])
               if al[k][j] > 1]
        if not big:
            continue
        A = _cube_family_constant(p, big)
        lam = min(0.5, 1.0 / (2 * A))
        worst = max(worst, _weight_ratios(p.dual(), cz, al, lam, eps))
    return worst


def maximal_ratio(f, p, max_side=None):
    """``||Mf||_p / ||f||_p``.

    Raises
    ------
    DegenerateInputError
        If ``f = 0``.
    """
    if f.grid != p.grid:
        raise GridMismatchError('function and exponent live on different grids')
    if f.is_zero():
        raise DegenerateInputError('the ratio is undefined for f = 0')
    return norm(maximal_function(f, max_side), p) / norm(f, p)
