import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varlp.exceptions import AlignmentError, DegenerateInputError
from varlp.grid import (Grid, GridFunction, constant_exponent, indicator,
                        make_cube, make_grid)
from varlp.maximal import (DyadicGridId, cz_decompose, default_scale_range,
                           duality_chain, dyadic_maximal, maximal_function,
                           maximal_ratio, operator_T, operator_T_l,
                           realized_shifts, three_grid_bound)
from oracles import dyadic_ancestors_maximal, maximal_naive
from strategies import grids


@st.composite
def dyadic_valued(draw, max_cells=8, nonneg=False):
    """Grid functions with values in (1/8) Z so every sum is exact."""
    g = draw(grids(max_cells=max_cells))
    lo = 0 if nonneg else -40
    ints = draw(st.lists(st.integers(lo, 40), min_size=g.size,
                         max_size=g.size))
    return GridFunction(g, np.array(ints, float).reshape(g.shape) / 8)


def test_box_indicator():
    g = make_grid(2, 0, (0, 0), (3, 3))
    f = GridFunction(g, np.ones((3, 3)))
    np.testing.assert_array_equal(maximal_function(f).values, 1.0)


def test_left_third_indicator():
    g = make_grid(1, 0, 0, 3)
    f = indicator(g, make_cube(g, 0, '1/3'))
    np.testing.assert_allclose(maximal_function(f).values, [1, 0.5, 1 / 3],
                               rtol=1e-15)
    np.testing.assert_array_equal(maximal_naive(f.values), [1, 0.5, 1 / 3])


@given(dyadic_valued(max_cells=12))
def test_equals_naive_enumeration(f):
    np.testing.assert_array_equal(maximal_function(f).values,
                                  maximal_naive(f.values))


@given(dyadic_valued())
def test_dominates_modulus(f):
    assert np.all(maximal_function(f).values >= np.abs(f.values))


@given(dyadic_valued())
def test_sublinear_and_homogeneous(f):
    Mf = maximal_function(f).values
    # scaling by a power of two keeps every average exact
    np.testing.assert_array_equal(maximal_function(f * -4).values, 4 * Mf)
    other = GridFunction(f.grid, np.roll(f.values, 1))
    both = maximal_function(f + other).values
    assert np.all(both <= Mf + maximal_function(other).values)


def test_standard_dyadic_grid_for_zero_shift():
    D = DyadicGridId.from_alpha((0, 0))
    assert D.shift == (0, 0)
    assert DyadicGridId.from_alpha(('1/3', '2/3')).shift == (1, 2)
    with pytest.raises(AlignmentError):
        DyadicGridId.from_alpha((0.5,))


def test_dyadic_indicator_against_ancestors():
    g = make_grid(1, 1, 0, 6)
    f = indicator(g, make_cube(g, 0, '1/3'))
    lo, hi = default_scale_range(g)
    got = dyadic_maximal(f, DyadicGridId((0,))).values
    want = dyadic_ancestors_maximal(f.values, g.start, g.M, (0,), lo, hi)
    np.testing.assert_array_equal(got, want)
    # the finest dyadic cube [0, 1/2) holds the indicator's mass 1/3
    assert got[0] == pytest.approx(2 / 3)


@given(dyadic_valued(nonneg=True), st.data())
def test_dyadic_against_ancestors(f, data):
    shift = tuple(data.draw(st.integers(0, 2)) for _ in range(f.grid.n))
    lo, hi = default_scale_range(f.grid)
    got = dyadic_maximal(f, DyadicGridId(shift)).values
    want = dyadic_ancestors_maximal(f.values, f.grid.start, f.grid.M, shift,
                                    lo, hi)
    np.testing.assert_array_equal(got, want)


@given(dyadic_valued(), st.data())
def test_dyadic_below_full_maximal(f, data):
    g = f.grid
    shift = tuple(data.draw(st.integers(0, 2)) for _ in range(g.n))
    # dyadic sides 3 * 2^(M - m) cells stay within three box lengths
    m_min = g.M - int(math.floor(math.log2(max(g.cells))))
    D = DyadicGridId(shift, m_min, g.M)
    assert np.all(dyadic_maximal(f, D).values
                  <= maximal_function(f).values)


def test_finer_than_grid_rejected():
    g = make_grid(1, 0, 0, 3)
    with pytest.raises(AlignmentError):
        dyadic_maximal(GridFunction(g, np.ones(3)), DyadicGridId((0,), -2, 1))


def test_three_grid_trivial_cases():
    g = make_grid(2, 0, (0, 0), (3, 3))
    assert three_grid_bound(GridFunction(g, np.zeros((3, 3)))).lhs == 0
    rep = three_grid_bound(GridFunction(g, np.ones((3, 3))))
    assert rep.passed and 0 < rep.lhs <= 1


@given(dyadic_valued())
def test_three_grid_random(f):
    assert three_grid_bound(f).passed


def test_cz_constant_function():
    g = make_grid(2, 1, (0, 0), (6, 6))
    f = GridFunction(g, np.ones((6, 6)))
    cz = cz_decompose(f, DyadicGridId((0, 0)), 3.0)
    assert cz.k_range[1] == -1
    top = cz.cubes[-1]
    assert len(top) == 1 and top[0].cube.side == 6 and top[0].average == 1
    for k in cz.levels:
        np.testing.assert_array_equal(cz.omega(k), cz.maximal > 3.0 ** k)
    assert not cz.omega(0).any()
    assert all(cz.verify().values())


def test_cz_single_spike_chain():
    g = make_grid(2, 2, (0, 0), (12, 12))
    vals = np.zeros((12, 12))
    vals[0, 0] = 4.0 ** 6
    f = GridFunction(g, vals)
    cz = cz_decompose(f, DyadicGridId((0, 0)), 4.0)
    chain = [cz.cubes[k] for k in cz.levels if cz.cubes[k]]
    assert all(len(c) == 1 for c in chain)
    avgs = [c[0].average for c in chain]
    sides = [c[0].cube.side for c in chain]
    # moving one level up the chain doubles the side and quarters the mean
    for (a1, s1), (a2, s2) in zip(zip(avgs, sides), zip(avgs[1:], sides[1:])):
        if s1 != s2:
            assert s1 == 2 * s2 and a2 == 4 * a1
    assert all(cz.verify().values())


@settings(max_examples=30)
@given(dyadic_valued(nonneg=True), st.sampled_from([1.5, 2.0, 3.0, 9.0]),
       st.data())
def test_cz_invariants(f, gamma, data):
    shift = tuple(data.draw(st.integers(0, 2)) for _ in range(f.grid.n))
    if f.is_zero():
        return
    cz = cz_decompose(f, DyadicGridId(shift), gamma)
    assert all(cz.verify(l_max=4).values())


def _cz(f, gamma=3.0):
    return cz_decompose(f, DyadicGridId((0,) * f.grid.n), gamma)


def test_operator_T_of_zero():
    g = make_grid(1, 1, 0, 6)
    f = GridFunction(g, [5, 0, 0, 1, 0, 0])
    cz = _cz(f)
    assert not operator_T(GridFunction(g, np.zeros(6)), cz).values.any()


def test_operator_T_single_cube():
    g = make_grid(1, 0, 0, 3)
    f = GridFunction(g, np.full(3, 2.0))
    cz = cz_decompose(f, DyadicGridId((0,)), 3.0, k_range=(0, 0))
    assert len(cz.cubes[0]) == 1
    Q = cz.cubes[0][0].cube
    gv = GridFunction(g, [1.0, 2.0, 6.0])
    want = indicator(g, Q).values * gv.average(Q)
    np.testing.assert_allclose(operator_T(gv, cz).values, want, rtol=1e-15)


@given(dyadic_valued(nonneg=True), dyadic_valued(nonneg=True))
def test_partition_and_duality(f, gvals):
    if f.is_zero():
        return
    g = GridFunction(f.grid, np.resize(gvals.values, f.grid.shape))
    cz = _cz(f, 2.0)
    T = operator_T(g, cz).values
    parts = [operator_T_l(g, cz, l).values
             for l in range(realized_shifts(cz) + 1)]
    S = np.zeros_like(T)
    for part in reversed(parts):
        S = S + part
    np.testing.assert_array_equal(S, T)
    for l, part in enumerate(parts):
        one = operator_T_l(g, cz, l, 1).values
        two = operator_T_l(g, cz, l, 2).values
        np.testing.assert_array_equal(one + two, part)
    assert duality_chain(f, g, cz).passed


def test_ratio_constant_exponent():
    g = make_grid(1, 0, 0, 3)
    f = GridFunction(g, np.ones(3))
    r = maximal_ratio(f, constant_exponent(g, 2))
    assert 1 <= r < math.inf


def test_ratio_zero_function():
    g = make_grid(1, 0, 0, 3)
    with pytest.raises(DegenerateInputError):
        maximal_ratio(GridFunction(g, np.zeros(3)), constant_exponent(g, 2))


def test_ratio_grows_for_l1_spike():
    ratios = []
    for M in range(3):
        g = Grid(1, M, (0,), (9 * 2 ** M,))
        vals = np.zeros(g.shape)
        vals[g.shape[0] // 2] = 1 / g.h
        ratios.append(maximal_ratio(GridFunction(g, vals),
                                    constant_exponent(g, 1)))
    assert ratios[0] < ratios[1] < ratios[2]
