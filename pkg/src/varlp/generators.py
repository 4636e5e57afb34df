"""Seeded random grids, exponents and functions for the invariant suites.

Every generator takes a ``numpy.random.Generator``; suites derive one per
instance from ``(seed, instance index)`` so any single instance can be
replayed in isolation.
"""

import math

import numpy as np

from .grid import Grid, GridFunction, ReciprocalExponent

__all__ = ('instance_rng', 'random_grid', 'random_reciprocal',
           'random_exponent', 'random_function', 'log_holder_exponent',
           'step_exponent', 'prolongate', 'nonneg_function')


def instance_rng(seed, index, salt=0):
    return np.random.default_rng([int(seed), int(index), int(salt)])


def random_grid(rng, n=None, max_cells=8, M=None):
    """Small grid with a random level, origin and cell counts."""
    n = int(rng.integers(1, 3)) if n is None else n
    M = int(rng.integers(0, 3)) if M is None else M
    cells = tuple(int(rng.integers(1, max_cells + 1)) for _ in range(n))
    start = tuple(int(rng.integers(-4, 5)) for _ in range(n))
    return Grid(n, M, start, cells)


def random_reciprocal(rng, shape, low=0.0, high=1.0, levels=None):
    """Reciprocals in ``[low, high]``; endpoints drawn with positive odds.

    With ``levels`` the values take at most that many distinct values,
    which mimics step exponents.
    """
    if levels is not None:
        pool = rng.uniform(low, high, levels)
        if rng.random() < 0.3:
            pool[0] = low
        if rng.random() < 0.3 and levels > 1:
            pool[-1] = high
        return pool[rng.integers(0, levels, shape)]
    u = rng.uniform(low, high, shape)
    mask = rng.random(shape)
    u[mask < 0.05] = low
    u[mask > 0.95] = high
    return u


def random_exponent(rng, grid, low=0.0, high=1.0, levels=None, tail=None):
    """Random exponent with reciprocals in ``[low, high]``.

    ``tail`` fixes the tail reciprocal; otherwise it is drawn from the same
    range.
    """
    if levels is None and rng.random() < 0.5:
        levels = int(rng.integers(1, 4))
    u = random_reciprocal(rng, grid.shape, low, high, levels)
    ut = float(rng.uniform(low, high)) if tail is None else float(tail)
    return ReciprocalExponent(grid, u, ut)


def random_function(rng, grid, scale=10.0, density=None):
    """Values uniform in ``[-scale, scale]`` on a random subset of cells."""
    d = rng.uniform(0.2, 1.0) if density is None else density
    vals = rng.uniform(-scale, scale, grid.shape)
    vals *= rng.random(grid.shape) < d
    return GridFunction(grid, vals)


def nonneg_function(rng, grid, scale=10.0, density=None):
    return abs(random_function(rng, grid, scale, density))


def step_exponent(grid, pieces, tail):
    """Piecewise constant exponent: ``pieces`` is a list of ``(cube, p)``.

    Cells outside every cube get the tail value.
    """
    ut = 0.0 if math.isinf(tail) else 1.0 / tail
    u = np.full(grid.shape, ut)
    for cube, p in pieces:
        u[cube.slices(grid)] = 0.0 if math.isinf(p) else 1.0 / p
    return ReciprocalExponent(grid, u, ut)


def log_holder_exponent(grid, base, amplitude, c_log, center=None):
    """Smooth exponent with a logarithmic decay to the tail value.

    ``1/p(x) = base + amplitude * (1 + sin(c_log * r)) / (2 log(e + r))``
    with ``r = |x - center|``: Lipschitz near every point (hence locally
    log-Hoelder) and converging to ``base`` at the rate ``1 / log r``.
    Values are clipped to ``[0, 1]``.
    """
    xs = grid.cell_centers()
    if center is None:
        center = [0.0] * grid.n
    r = np.sqrt(sum((x - c) ** 2 for x, c in zip(xs, center)))
    u = base + amplitude * (1 + np.sin(c_log * r)) / (2 * np.log(math.e + r))
    return ReciprocalExponent(grid, np.clip(u, 0.0, 1.0),
                              min(max(base, 0.0), 1.0))


def _repeat(a, times, n):
    for d in range(n):
        a = np.repeat(a, 2 ** times, axis=d)
    return a


def prolongate(obj, times=1):
    """Represent a grid function or exponent on the ``times``-fold refinement."""
    g = obj.grid
    for _ in range(times):
        g = g.refine()
    if isinstance(obj, GridFunction):
        return GridFunction(g, _repeat(obj.values, times, g.n))
    return ReciprocalExponent(g, _repeat(obj.u, times, g.n), obj.u_tail,
                              _repeat(obj.v, times, g.n), obj.v_tail)
