import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varlp.classes import (a_infinity_check, averaging_operator_check,
                           avgmodular_check, best_p_infinity, class_constants,
                           enumerate_cubes, muckenhoupt_constant,
                           nekvinda_constant)
from varlp.exceptions import PreconditionError
from varlp.grid import (GridFunction, ReciprocalExponent, constant_exponent,
                        indicator, make_cube, make_grid)
from varlp.luxemburg import norm
from oracles import muckenhoupt_brute, norm_scan
from strategies import exponents, grids


@pytest.mark.parametrize('p0', [1, 1.5, 2, 3, math.inf])
def test_constant_exponent_constants(p0):
    g = make_grid(2, 0, (0, 0), (4, 5))
    c = class_constants(constant_exponent(g, p0))
    assert c.a_const == 1.0
    assert c.n_const == 1.0


def test_two_valued_nine_cells():
    g = make_grid(1, 0, 0, 9)
    u = np.full(9, 1 / 3)
    u[0] = 2 / 3
    p = ReciprocalExponent(g, u, 1 / 3)
    starts, _ = enumerate_cubes(g)
    assert len(starts) == 45
    want, _ = muckenhoupt_brute(p.u, p.v, g.cell_volume)
    assert want > 1
    assert muckenhoupt_constant(p) == pytest.approx(want, rel=1e-9)


@settings(max_examples=25)
@given(st.data())
def test_matches_brute_force(data):
    g = data.draw(grids(max_cells=5))
    p = data.draw(exponents(g))
    want, _ = muckenhoupt_brute(p.u, p.v, g.cell_volume)
    assert muckenhoupt_constant(p) == pytest.approx(want, rel=1e-9)


@given(st.data())
def test_constant_at_least_one(data):
    g = data.draw(grids())
    p = data.draw(exponents(g))
    assert muckenhoupt_constant(p) >= 1.0


def test_side_limit_shrinks_family():
    g = make_grid(1, 0, 0, 9)
    p = ReciprocalExponent(g, np.linspace(0, 1, 9), 0.5)
    assert muckenhoupt_constant(p, max_side_cells=1) == 1.0
    assert muckenhoupt_constant(p, 2) <= muckenhoupt_constant(p)


def test_nekvinda_matching_tail():
    g = make_grid(1, 0, 0, 3)
    assert nekvinda_constant(constant_exponent(g, 4), 0.25) == 1.0


def test_nekvinda_mismatched_tail():
    g = make_grid(1, 0, 0, 3)
    assert nekvinda_constant(constant_exponent(g, 4), 0.3) == math.inf


def test_nekvinda_small_cell_clipped_to_one():
    g = make_grid(1, 0, 0, 3)
    p = ReciprocalExponent(g, [1.0, 0.5, 0.5], 0.5)
    # (1/3) lambda^-2 = 1 has root 3^-1/2 < 1
    assert nekvinda_constant(p, 0.5) == 1.0


def test_nekvinda_one_cell_equation():
    g = make_grid(1, 0, 0, 9)
    p = ReciprocalExponent(g, np.ones(9), 0.0)
    want = norm_scan('rho', np.ones(9), np.ones(9), g.cell_volume)
    assert want == pytest.approx(3, rel=1e-12)
    assert nekvinda_constant(p, 0.0) == pytest.approx(3, rel=1e-10)


def test_best_p_infinity_constant():
    g = make_grid(1, 0, 0, 3)
    assert best_p_infinity(constant_exponent(g, 2)) == (0.5, 1.0)


def test_best_p_infinity_uses_tail():
    g = make_grid(1, 0, 0, 3)
    p = ReciprocalExponent(g, [0.9, 0.2, 0.3], 0.3)
    ui, val = best_p_infinity(p)
    fine_ui, fine_val = best_p_infinity(p, 1001)
    assert ui == pytest.approx(0.3) and fine_ui == pytest.approx(0.3)
    assert val == pytest.approx(fine_val)
    assert val == nekvinda_constant(p, 0.3)


def test_averaging_examples():
    g = make_grid(1, 1, 0, 6)
    p = constant_exponent(g, 3)
    Q = make_cube(g, 0, '1/2')
    one = indicator(g, Q)
    f = one / norm(one, p)
    assert f.average(Q) * norm(one, p) == pytest.approx(1.0, rel=1e-9)
    zero = GridFunction(g, np.zeros(6))
    assert zero.average(Q) * norm(one, p) == 0


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_averaging_check_random(seed):
    rng = np.random.default_rng(seed)
    g = make_grid(2, 0, (0, 0), (4, 4))
    p = ReciprocalExponent(g, rng.uniform(0, 1, (4, 4)), 0.5)
    rep = averaging_operator_check(p, samples=60, seed=seed)
    assert rep.passed
    assert rep.details['witness_value'] <= 2 * rep.details['a_const']


def test_a_infinity_unit_weight():
    g = make_grid(1, 0, 0, 6)
    q = ReciprocalExponent(g, np.linspace(0.2, 0.8, 6), 0.5)
    Q = make_cube(g, 0, 2)
    rep = a_infinity_check(q, 1.0, Q, trials=200)
    assert rep.passed


def test_a_infinity_random_levels():
    g = make_grid(2, 0, (0, 0), (3, 3))
    rng = np.random.default_rng(4)
    q = ReciprocalExponent(g, rng.uniform(0.2, 0.8, (3, 3)), 0.5)
    Q = make_cube(g, (0, 0), 1)
    from varlp.luxemburg import norm as nrm
    tmax = 2 * muckenhoupt_constant(q, within=Q) / nrm(indicator(g, Q), q)
    for t in np.linspace(1, tmax, 5):
        assert a_infinity_check(q, t, Q, trials=200, seed=int(t * 10)).passed


def test_a_infinity_preconditions():
    g = make_grid(1, 0, 0, 3)
    Q = make_cube(g, 0, 1)
    with pytest.raises(PreconditionError):
        a_infinity_check(constant_exponent(g, 1), 1.0, Q)
    with pytest.raises(PreconditionError):
        a_infinity_check(constant_exponent(g, 2), 1e6, Q)


def test_avgmodular_constant_function_infeasible():
    g = make_grid(1, 0, 0, 3)
    Q = make_cube(g, 0, 1)
    with pytest.raises(PreconditionError):
        avgmodular_check(constant_exponent(g, 2),
                         GridFunction(g, np.ones(3)), Q)


def test_avgmodular_concentrated_average_too_small():
    g = make_grid(1, 2, 0, 12)
    Q = make_cube(g, 0, 1)
    f = indicator(g, make_cube(g, 0, '1/12')) * 3
    with pytest.raises(PreconditionError):
        avgmodular_check(constant_exponent(g, 3), f, Q)


def test_avgmodular_feasible_spike():
    g = make_grid(1, 3, 0, 24)
    # |f|_Q = 8.5/8 >= 1 while ||f|| ~ 8.5 * 24^(-1/1.05) ~ 0.41
    Q = make_cube(g, 0, '1/3')
    p = ReciprocalExponent(g, np.full(24, 1 / 1.05), 1 / 1.05)
    f = indicator(g, make_cube(g, 0, '1/24')) * 8.5
    rep = avgmodular_check(p, f, Q)
    assert rep.details['average'] >= 1 and rep.details['norm'] <= 0.5
    assert rep.passed


def test_best_p_infinity_tail_off_the_scan():
    g = make_grid(1, 0, 0, 3)
    ui, val = best_p_infinity(constant_exponent(g, 3))
    assert ui == pytest.approx(1 / 3) and val == 1.0
