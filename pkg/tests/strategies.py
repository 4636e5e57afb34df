"""Hypothesis strategies for small grids, exponents and functions."""

import numpy as np
from hypothesis import strategies as st

from varlp.grid import Grid, GridFunction, ReciprocalExponent


@st.composite
def grids(draw, n=None, max_cells=6):
    n = draw(st.integers(1, 2)) if n is None else n
    M = draw(st.integers(0, 2))
    start = tuple(draw(st.integers(-3, 3)) for _ in range(n))
    cells = tuple(draw(st.integers(1, max_cells)) for _ in range(n))
    return Grid(n, M, start, cells)


def _array(draw, shape, elements):
    size = int(np.prod(shape))
    return np.array(draw(st.lists(elements, min_size=size, max_size=size)),
                    dtype=float).reshape(shape)


RECIP = st.one_of(st.just(0.0), st.just(1.0), st.just(0.5),
                  st.floats(0.0, 1.0, allow_nan=False))
VALUE = st.one_of(st.just(0.0), st.floats(-20, 20, allow_nan=False,
                                          allow_subnormal=False))


@st.composite
def exponents(draw, grid, low=0.0, high=1.0):
    el = RECIP.filter(lambda u: low <= u <= high)
    u = _array(draw, grid.shape, el)
    return ReciprocalExponent(grid, u, draw(el))


@st.composite
def functions(draw, grid, nonzero=False):
    vals = _array(draw, grid.shape, VALUE)
    if nonzero and not np.abs(vals).max() > 1e-6:
        vals.flat[0] = 1.0
    return GridFunction(grid, vals)


@st.composite
def scenarios(draw, n=None, max_cells=6, nonzero=False):
    g = draw(grids(n, max_cells))
    return g, draw(exponents(g)), draw(functions(g, nonzero))
