"""Cell lattices, grid functions and reciprocal exponents.

Everything lives on a box tiled by congruent cells of side
``h = 2**-M / 3``.  With this cell size the corners of every shifted dyadic
cube ``2**-m ([0,1)^n + j + (-1)**m alpha)``, ``alpha in {0,1/3,2/3}^n``,
``m <= M`` fall on cell boundaries, so all cube averages used by the library
are finite sums over whole cells.

Positions are kept in *lattice units*: the integer ``k`` stands for the
coordinate ``k * h``.  Cubes are stored by integer lower corner and integer
side, which keeps all geometric predicates exact.

Exponents are stored through their reciprocals ``u = 1/p`` in ``[0, 1]``
(``u = 0`` is ``p = inf``) together with the reciprocal of the conjugate
exponent ``v = 1 - u``.  Keeping both arrays makes ``dual`` an exact
involution in floating point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math
from numbers import Rational

import numpy as np

from .exceptions import (AlignmentError, DimensionError, DomainError,
                         GridMismatchError)

__all__ = ('Grid', 'Cube', 'GridFunction', 'ReciprocalExponent', 'make_grid',
           'make_cube', 'indicator', 'essential_bounds', 'dual_exponent',
           'deviation_exponent', 'constant_exponent', 'grid_function',
           'bounds_on', 'as_fraction')

ALIGN_RTOL = 1e-9


def as_fraction(x):
    """Convert ``x`` (int, Fraction, ``"a/b"`` string or float) to Fraction.

    Floats are converted with ``limit_denominator`` so that ``1/3`` typed as
    ``0.3333333333333333`` is recovered exactly.
    """
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f'non-finite coordinate {x!r}')
    return Fraction(x).limit_denominator(10**12)


def _to_lattice(x, M, what):
    """Return the integer ``k`` with ``x = k * 2**-M / 3``."""
    q = as_fraction(x) * 3 * 2**M
    k = round(q)
    if isinstance(x, float):
        ok = abs(float(q) - k) <= ALIGN_RTOL * max(1.0, abs(float(q)))
    else:
        ok = q == k
    if not ok:
        raise AlignmentError(
            f'{what} {x!r} is not a multiple of the cell size 2^-{M}/3')
    return int(k)


@dataclass(frozen=True)
class Grid:
    """Rectangular lattice of ``prod(cells)`` cells of side ``2**-M / 3``.

    Attributes
    ----------
    n : int
        Spatial dimension, 1 or 2.
    M : int
        Refinement level; the cell side is ``h = 2**-M / 3``.
    start : tuple of int
        Lattice coordinates of the lower corner of the box.
    cells : tuple of int
        Number of cells per axis.
    """

    n: int
    M: int
    start: tuple
    cells: tuple

    @property
    def h(self):
        return 1.0 / (3 * 2**self.M)

    @property
    def cell_volume(self):
        return self.h ** self.n

    @property
    def origin(self):
        return tuple(s * self.h for s in self.start)

    @property
    def shape(self):
        return self.cells

    @property
    def size(self):
        return int(np.prod(self.cells))

    @property
    def measure(self):
        return self.size * self.cell_volume

    def cell_centers(self):
        """Coordinates of the cell centers, one array per axis (ij order)."""
        axes = [(np.arange(c) + s + 0.5) * self.h
                for s, c in zip(self.start, self.cells)]
        return np.meshgrid(*axes, indexing='ij')

    def refine(self):
        """Same box with cells halved (``M + 1``)."""
        return Grid(self.n, self.M + 1, tuple(2 * s for s in self.start),
                    tuple(2 * c for c in self.cells))

    def box_cube(self):
        """The box as a cube; only defined when all axes have equal length."""
        if len(set(self.cells)) != 1:
            raise AlignmentError('box is not a cube')
        return Cube(self.start, self.cells[0], self.M)


def make_grid(n, M, origin, cells_per_axis):
    """Build a :class:`Grid` covering ``origin + [0, cells * h)``.

    Parameters
    ----------
    n : int
        Dimension (1 or 2).
    M : int
        Level, ``M >= 0``; cell size ``2**-M / 3``.
    origin : number or sequence of numbers
        Lower corner; each coordinate must be an integer multiple of the cell
        size.  Fractions and strings like ``"1/3"`` are accepted.
    cells_per_axis : int or sequence of int

    Raises
    ------
    DimensionError
        If ``n`` is not 1 or 2.
    AlignmentError
        If an origin coordinate is not on the lattice.
    """
    if n not in (1, 2):
        raise DimensionError(f'dimension {n!r} not supported (use 1 or 2)')
    if int(M) != M or M < 0:
        raise DomainError(f'level M must be a nonnegative integer, got {M!r}')
    M = int(M)
    origin = _tuple(origin, n, 'origin')
    cells = tuple(int(c) for c in _tuple(cells_per_axis, n, 'cells_per_axis'))
    if any(c < 1 for c in cells):
        raise DomainError(f'cells_per_axis must be >= 1, got {cells}')
    start = tuple(_to_lattice(x, M, 'origin coordinate') for x in origin)
    return Grid(n, M, start, cells)


def _tuple(x, n, what):
    if np.ndim(x) == 0 and not isinstance(x, (tuple, list)):
        x = (x,) * n
    x = tuple(x)
    if len(x) != n:
        raise DimensionError(f'{what} has {len(x)} entries, expected {n}')
    return x


@dataclass(frozen=True)
class Cube:
    """Half-open axis-aligned cube ``[start*h, (start+side)*h)``.

    ``start`` and ``side`` are in lattice units of level ``M``.
    """

    start: tuple
    side: int
    M: int

    @property
    def n(self):
        return len(self.start)

    @property
    def h(self):
        return 1.0 / (3 * 2**self.M)

    @property
    def lower(self):
        return tuple(s * self.h for s in self.start)

    @property
    def length(self):
        return self.side * self.h

    @property
    def measure(self):
        return self.length ** self.n

    def cell_count(self):
        return self.side ** self.n

    def inside(self, grid):
        """Whether the cube lies in the box of ``grid``."""
        _check_level(self, grid)
        return all(g <= s and s + self.side <= g + c
                   for s, g, c in zip(self.start, grid.start, grid.cells))

    def slices(self, grid):
        """Index slices of the box cells covered by the cube (clipped)."""
        _check_level(self, grid)
        out = []
        for s, g, c in zip(self.start, grid.start, grid.cells):
            lo = min(max(s - g, 0), c)
            hi = min(max(s + self.side - g, 0), c)
            out.append(slice(lo, hi))
        return tuple(out)

    def contains_cube(self, other):
        return all(s <= o and o + other.side <= s + self.side
                   for s, o in zip(self.start, other.start))


def _check_level(cube, grid):
    if cube.M != grid.M or cube.n != grid.n:
        raise GridMismatchError('cube and grid use different lattices')


def make_cube(grid, lower, side):
    """Cube with real lower corner ``lower`` and side length ``side``.

    Raises :class:`AlignmentError` unless both are multiples of ``grid.h``.
    """
    lower = _tuple(lower, grid.n, 'lower corner')
    start = tuple(_to_lattice(x, grid.M, 'cube corner') for x in lower)
    s = _to_lattice(side, grid.M, 'cube side')
    if s < 1:
        raise DomainError('cube side must be positive')
    return Cube(start, s, grid.M)


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Piecewise constant function, one value per cell, zero off the box."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.grid.shape:
            vals = vals.reshape(self.grid.shape)
        if not np.all(np.isfinite(vals)):
            raise DomainError('grid function values must be finite')
        object.__setattr__(self, 'values', _readonly(vals))

    def __abs__(self):
        return GridFunction(self.grid, np.abs(self.values))

    def __mul__(self, c):
        if isinstance(c, GridFunction):
            _same_grid(self, c)
            return GridFunction(self.grid, self.values * c.values)
        return GridFunction(self.grid, self.values * c)

    __rmul__ = __mul__

    def __add__(self, other):
        _same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __truediv__(self, c):
        return GridFunction(self.grid, self.values / c)

    def integral(self):
        return float(self.values.sum()) * self.grid.cell_volume

    def max_abs(self):
        return float(np.abs(self.values).max())

    def is_zero(self):
        return not np.any(self.values)

    def restricted(self, cube):
        """``f * 1_Q``."""
        out = np.zeros(self.grid.shape)
        sl = cube.slices(self.grid)
        out[sl] = self.values[sl]
        return GridFunction(self.grid, out)

    def average(self, cube):
        """Mean of ``|f|`` over ``cube``; outside the box ``f`` is 0."""
        sl = cube.slices(self.grid)
        return float(np.abs(self.values[sl]).sum()) / cube.cell_count()


def grid_function(grid, values):
    return GridFunction(grid, values)


def _same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError('objects live on different grids')


@dataclass(frozen=True, eq=False)
class ReciprocalExponent:
    """Variable exponent ``p`` stored as ``u = 1/p`` per cell plus a tail.

    ``v`` holds ``1/p'`` and defaults to ``1 - u``; ``dual`` swaps the two
    arrays so that ``dual(dual(p))`` returns the original data bit for bit.
    """

    grid: Grid
    u: np.ndarray
    u_tail: float
    v: np.ndarray = field(default=None)
    v_tail: float = field(default=None)

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        if u.ndim == 0:
            u = np.full(self.grid.shape, float(u))
        u = u.reshape(self.grid.shape)
        if not (np.all(u >= 0) and np.all(u <= 1)):
            raise DomainError('reciprocal exponent must lie in [0, 1]')
        ut = float(self.u_tail)
        if not 0 <= ut <= 1:
            raise DomainError(f'tail reciprocal {ut} not in [0, 1]')
        v = 1.0 - u if self.v is None else np.asarray(self.v, float)
        vt = 1.0 - ut if self.v_tail is None else float(self.v_tail)
        object.__setattr__(self, 'u', _readonly(u))
        object.__setattr__(self, 'u_tail', ut)
        object.__setattr__(self, 'v', _readonly(np.clip(v.reshape(
            self.grid.shape), 0.0, 1.0)))
        object.__setattr__(self, 'v_tail', min(max(vt, 0.0), 1.0))

    @property
    def p(self):
        """Exponent values per cell (``inf`` where ``u == 0``)."""
        with np.errstate(divide='ignore'):
            return 1.0 / self.u

    @property
    def p_tail(self):
        return math.inf if self.u_tail == 0 else 1.0 / self.u_tail

    def dual(self):
        return ReciprocalExponent(self.grid, self.v, self.v_tail,
                                  self.u, self.u_tail)

    def is_constant(self):
        return bool(np.all(self.u == self.u_tail))

    def with_reciprocal(self, u, u_tail):
        return ReciprocalExponent(self.grid, u, u_tail)

    def scaled(self, s):
        """Exponent ``s * p`` (reciprocal ``u / s``)."""
        return ReciprocalExponent(self.grid, self.u / s, self.u_tail / s)


def constant_exponent(grid, p):
    """Constant exponent ``p`` in ``[1, inf]`` on the box and the tail."""
    u = 0.0 if math.isinf(p) else 1.0 / p
    return ReciprocalExponent(grid, np.full(grid.shape, u), u)


def _recip(x):
    return math.inf if x == 0 else 1.0 / x


def essential_bounds(p):
    """``(p_minus, p_plus)``; the tail counts since it has infinite measure."""
    umax = max(float(p.u.max()), p.u_tail)
    umin = min(float(p.u.min()), p.u_tail)
    return _recip(umax), _recip(umin)


def bounds_on(p, cube):
    """``(inf, sup)`` of ``p`` over the box cells covered by ``cube``."""
    sub = p.u[cube.slices(p.grid)]
    if sub.size == 0:
        raise DomainError('cube does not meet the box')
    return _recip(float(sub.max())), _recip(float(sub.min()))


def dual_exponent(p):
    """Conjugate exponent ``p'`` with ``1/p + 1/p' = 1``."""
    return p.dual()


def deviation_exponent(p, p_inf_reciprocal):
    """Exponent ``s`` with ``1/s = |1/p - 1/p_inf|`` cell-wise and on the tail."""
    ui = float(p_inf_reciprocal)
    if not 0 <= ui <= 1:
        raise DomainError(f'p_inf reciprocal {ui} not in [0, 1]')
    return ReciprocalExponent(p.grid, np.abs(p.u - ui), abs(p.u_tail - ui))


def indicator(grid, cube):
    """``1_Q`` as a grid function (clipped to the box)."""
    out = np.zeros(grid.shape)
    out[cube.slices(grid)] = 1.0
    return GridFunction(grid, out)
