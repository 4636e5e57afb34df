"""Slow reference implementations that share no code with the package.

Each oracle recomputes a quantity from its definition with plain Python
loops or direct slicing, so disagreements point at the fast paths.
"""

import itertools
import math

import numpy as np


def modular_naive(kind, values, recips, vol):
    """Any of the four modulars by a per-cell loop.

    ``kind`` is one of ``'rho'``, ``'rho_tilde'``, ``'rho_er'``,
    ``'rho_kr'``.
    """
    finite_sum = 0.0
    sup_inf = 0.0
    blowup = False
    for a, u in zip(np.abs(np.ravel(values)), np.ravel(recips)):
        a, u = float(a), float(u)
        if u == 0:
            sup_inf = max(sup_inf, a)
            if a > 1:
                blowup = True
            continue
        t = math.inf if a > 0 and math.log(a) / u > 700 else a ** (1 / u)
        finite_sum += vol * (u * t if kind == 'rho_tilde' else t)
    if kind in ('rho', 'rho_tilde'):
        return math.inf if blowup else finite_sum
    if kind == 'rho_er':
        return max(finite_sum, sup_inf)
    return finite_sum + sup_inf


def norm_scan(kind, values, recips, vol, rel=1e-13, points=64):
    """Luxemburg norm by repeated dense scans of ``lambda`` on a log grid.

    Each pass locates the transition ``modular(f / lambda) <= 1`` between
    two neighbouring scan points and zooms into that interval.
    """
    a = np.abs(np.ravel(values)).astype(float)
    if not a.any():
        return 0.0

    def ok(lam):
        return modular_naive(kind, a / lam, recips, vol) <= 1.0

    lo = hi = 1.0
    while ok(lo):
        lo /= 2
    while not ok(hi):
        hi *= 2
    while hi / lo - 1 > rel:
        grid = np.geomspace(lo, hi, points)
        flags = [ok(x) for x in grid]
        j = flags.index(True)
        new = float(grid[j - 1]), float(grid[j])
        if new == (lo, hi):  # float spacing exhausted (subnormal scale)
            break
        lo, hi = new
    return hi


def maximal_naive(values, max_side=None):
    """Uncentered maximal function: every aligned cube, summed directly.

    Sides run from 1 up to the longest box side (larger cubes only dilute),
    or to ``max_side``.
    """
    a = np.abs(np.asarray(values, dtype=float))
    n = a.ndim
    shape = a.shape
    smax = max(shape) if max_side is None else max_side
    out = np.zeros(shape)
    for s in range(1, smax + 1):
        ranges = [range(-s + 1, c) for c in shape]
        for lo in itertools.product(*ranges):
            sl = tuple(slice(max(x, 0), min(x + s, c))
                       for x, c in zip(lo, shape))
            avg = a[sl].sum() / float(s) ** n
            np.maximum(out[sl], avg, out=out[sl])
    return out


def indicator_norm_scan(recips_in_cube, vol, tail_count=0, tail_recip=None):
    """``||1_Q||`` for a cube given by the reciprocals of its cells."""
    r = list(np.ravel(recips_in_cube))
    if tail_count:
        r += [tail_recip] * tail_count
    r = np.array(r, dtype=float)
    if np.all(r == r[0]):
        return (len(r) * vol) ** r[0]
    return norm_scan('rho', np.ones(len(r)), r, vol)


def muckenhoupt_brute(u, v, vol, max_side=None):
    """``max over cubes inside the box of ||1_Q||_p ||1_Q||_p' / |Q|``.

    Returns ``(value, (lower corner index, side))``.
    """
    u = np.asarray(u)
    shape = u.shape
    smax = min(shape) if max_side is None else min(min(shape), max_side)
    best = (-1.0, None)
    for s in range(1, smax + 1):
        for lo in itertools.product(*[range(c - s + 1) for c in shape]):
            sl = tuple(slice(x, x + s) for x in lo)
            cu, cv = u[sl], v[sl]
            if np.all(cu == cu.flat[0]) and np.all(cv == cv.flat[0]):
                ratio = 1.0
            else:
                meas = cu.size * vol
                ratio = (indicator_norm_scan(cu, vol)
                         * indicator_norm_scan(cv, vol) / meas)
            if ratio > best[0]:
                best = (ratio, (lo, s))
    return best


def dyadic_ancestors_maximal(values, start, M, shift, m_min, m_max):
    """Dyadic maximal function by walking the ancestors of every cell.

    Cubes at scale ``m`` have side ``2**-m`` and lower corners
    ``2**-m * (j + (-1)**m * shift / 3)``; values are in lattice units of
    ``2**-M / 3`` so everything is integer arithmetic.
    """
    a = np.abs(np.asarray(values, dtype=float))
    n = a.ndim
    out = np.zeros(a.shape)
    for idx in np.ndindex(a.shape):
        cell = [s + i for s, i in zip(start, idx)]
        best = 0.0
        for m in range(m_min, m_max + 1):
            side = 3 * 2 ** (M - m)
            sign = 1 if m % 2 == 0 else -1
            lows = []
            for d in range(n):
                off = sign * shift[d] * 2 ** (M - m)
                j = (cell[d] - off) // side
                lows.append(j * side + off)
            sl = tuple(slice(max(lo - st, 0), max(min(lo + side - st, c), 0))
                       for lo, st, c in zip(lows, start, a.shape))
            best = max(best, a[sl].sum() / float(side) ** n)
        out[idx] = best
    return out
