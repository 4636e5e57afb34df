import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varlp import approximation as apx
from varlp.exceptions import DomainError
from varlp.grid import (GridFunction, ReciprocalExponent, constant_exponent,
                        make_grid)
from varlp.modulars import ModularKind, modular
from strategies import scenarios


def test_first_approximation_is_two(rng):
    g = make_grid(1, 0, 0, 4)
    p = ReciprocalExponent(g, rng.uniform(0, 1, 4), 0.3)
    p1 = apx.approximate_exponent(p, 1)
    np.testing.assert_array_equal(p1.u, 0.5)
    assert p1.u_tail == 0.5


def test_infinite_exponent_second_approximation():
    g = make_grid(1, 0, 0, 3)
    p2 = apx.approximate_exponent(constant_exponent(g, math.inf), 2)
    np.testing.assert_allclose(p2.p, 3.0)
    np.testing.assert_allclose(p2.dual().p, 1.5)


def test_rejects_bad_index():
    g = make_grid(1, 0, 0, 3)
    with pytest.raises(DomainError):
        apx.approximate_exponent(constant_exponent(g, 2), 0)
    with pytest.raises(DomainError):
        apx.approximate_exponent(constant_exponent(g, 2), 2.5)


@given(scenarios(), st.integers(1, 10**6))
def test_uniform_convergence_rate(sc, k):
    _, p, _ = sc
    pk = apx.approximate_exponent(p, k)
    gap = np.abs(pk.u - p.u).max()
    assert gap == pytest.approx(2 / (k + 1) * np.abs(0.5 - p.u).max(),
                                rel=1e-9, abs=1e-15)
    assert np.all(pk.u > 0) and np.all(pk.u < 1)
    np.testing.assert_allclose(pk.u + pk.v, 1.0, atol=1e-15)


def test_pk_constants_constant_exponent():
    g = make_grid(1, 0, 0, 6)
    for k in (2, 3, 5, 10):
        a, n = apx.check_pk_constants(constant_exponent(g, 3), k)
        assert a.lhs == 1.0 and n.lhs == 1.0
        assert a.passed and n.passed


def test_pk_constants_two_valued():
    g = make_grid(1, 0, 0, 9)
    u = np.full(9, 1 / 3)
    u[:3] = 0.9
    p = ReciprocalExponent(g, u, 1 / 3)
    for k in (2, 3, 5, 10):
        a, n = apx.check_pk_constants(p, k)
        assert a.passed and n.passed
        assert a.lhs <= 8 * a.details['a_const']


def test_fatou_bounded_small_support():
    g = make_grid(1, 0, 0, 6)
    f = GridFunction(g, [0.5, 0, 0, 0, 0, 0])
    res = apx.fatou_suite(f, constant_exponent(g, 2))
    assert res.passed


@settings(max_examples=25)
@given(scenarios())
def test_fatou_random(sc):
    _, p, f = sc
    assert apx.fatou_suite(f, p, steps=5).passed


def test_convergence_constant_exponent():
    g = make_grid(1, 0, 0, 3)
    f = GridFunction(g, [1.0, 2.0, 0.5])
    rep = apx.convergence_suite(constant_exponent(g, 3), f)
    assert rep.classification == 'pass'


def test_oscillating_counterexample_is_expected_failure():
    f, p, seq = apx.oscillating_counterexample(10)
    for k in range(1, 11):
        assert modular(ModularKind.RHO_TILDE, f, seq(k)) == math.inf
    assert modular(ModularKind.RHO_TILDE, f, p) == 2.0
    rep = apx.convergence_suite(p, f, k_list=range(1, 11), sequence=seq,
                                probe=10)
    assert not rep.limit_ok
    assert not rep.hypotheses_ok
    assert rep.classification == 'expected-failure'


def test_decay_counterexample():
    assert apx.decay_counterexample() == pytest.approx(0.5, abs=1e-6)
    assert apx.decay_counterexample(k=3) == math.inf
    assert apx.tail_tilde_power(10.0, 2) == pytest.approx(0.05)
    assert apx.tail_tilde_power(10.0, 1) == math.inf


def test_golden_values():
    bad = {name: v for name, v in apx.golden_values().items()
           if not apx.golden_ok(*v)}
    assert not bad
