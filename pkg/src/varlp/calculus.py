"""Checkers for the standard inequalities of variable exponent calculus.

Each checker computes both sides with :func:`varlp.luxemburg.norm` and
returns an :class:`~varlp.reports.InequalityReport`; right-hand sides carry a
relative slack of ``1e-6`` because two bisection results are multiplied.
"""

import math

import numpy as np

from .exceptions import (ClassViolationError, ExponentDomainError,
                         GridMismatchError)
from .grid import GridFunction, ReciprocalExponent, essential_bounds
from .luxemburg import norm
from .reports import InequalityReport, digest

__all__ = ('check_hoelder', 'check_power_identity', 'check_interpolation',
           'sum_norm_upper', 'check_embedding', 'check_nekvinda_minimax',
           'infinity_norm')

ORDER_TOL = 1e-12


def infinity_norm(f):
    return f.max_abs()


def _check_grid(*objs):
    grids = {o.grid for o in objs}
    if len(grids) != 1:
        raise GridMismatchError('arguments live on different grids')


def check_hoelder(f, g, p, q):
    """``||f g||_s <= 2 ||f||_p ||g||_q`` with ``1/s = 1/p + 1/q``."""
    _check_grid(f, g, p, q)
    us = p.u + q.u
    ust = p.u_tail + q.u_tail
    if us.max() > 1 + ORDER_TOL or ust > 1 + ORDER_TOL:
        raise ExponentDomainError('1/p + 1/q exceeds 1 somewhere')
    s = ReciprocalExponent(p.grid, np.minimum(us, 1.0), min(ust, 1.0))
    lhs = norm(f * g, s)
    nf, ng = norm(f, p), norm(g, q)
    return InequalityReport.compare(
        'hoelder', lhs, 2 * nf * ng, 2.0,
        digest(f.values, g.values, p.u, q.u), norm_f=nf, norm_g=ng)


def check_power_identity(f, p, s, rtol=1e-8):
    """``|| |f|^s ||_p = ||f||_{s p}^s``; the report compares the relative gap."""
    if s < 1:
        raise ExponentDomainError(f'power s must be >= 1, got {s}')
    a = np.abs(f.values)
    left = norm(GridFunction(f.grid, a ** s), p)
    right = norm(f, p.scaled(s)) ** s
    mag = max(abs(left), abs(right))
    gap = 0.0 if mag == 0 else abs(left - right) / mag
    return InequalityReport.compare(
        'power_identity', gap, rtol, s, digest(f.values, p.u, s), slack=0.0,
        left=left, right=right)


def interpolated_exponent(p0, p1, theta):
    u = (1 - theta) * p0.u + theta * p1.u
    ut = (1 - theta) * p0.u_tail + theta * p1.u_tail
    return ReciprocalExponent(p0.grid, np.clip(u, 0, 1), min(max(ut, 0), 1))


def check_interpolation(f, p0, p1, theta):
    """``||f||_{p_theta} <= 2 ||f||_{p0}^(1-theta) ||f||_{p1}^theta``."""
    _check_grid(f, p0, p1)
    pt = interpolated_exponent(p0, p1, theta)
    lhs = norm(f, pt)
    n0, n1 = norm(f, p0), norm(f, p1)
    rhs = 2 * n0 ** (1 - theta) * n1 ** theta
    return InequalityReport.compare(
        'interpolation', lhs, rhs, 2.0, digest(f.values, p0.u, p1.u, theta))


def sum_norm_upper(f, r, s, threshold):
    """Upper bound for ``||f||_{L^r + L^s}`` from the split at ``threshold``.

    Values with ``|f| > threshold`` go to ``L^r``, the rest to ``L^s``.
    """
    a = np.abs(f.values)
    big = GridFunction(f.grid, np.where(a > threshold, f.values, 0.0))
    small = GridFunction(f.grid, np.where(a > threshold, 0.0, f.values))
    return norm(big, r) + norm(small, s)


def _le(q1, q2):
    """Pointwise ``q1 <= q2`` for exponents, i.e. ``1/q1 >= 1/q2``."""
    return (np.all(q1.u >= q2.u - ORDER_TOL)
            and q1.u_tail >= q2.u_tail - ORDER_TOL)


def check_embedding(f, p, r, s):
    """Both embeddings ``L^r cap L^s -> L^p -> L^r + L^s`` (constant 2).

    The sum-space side uses the canonical split of ``f / ||f||_p`` at level
    1, i.e. the split of ``f`` at ``||f||_p``.
    """
    _check_grid(f, p, r, s)
    if not (_le(r, p) and _le(p, s)):
        raise ExponentDomainError('need r <= p <= s pointwise')
    np_, nr, ns = norm(f, p), norm(f, r), norm(f, s)
    inst = digest(f.values, p.u, r.u, s.u)
    cap = InequalityReport.compare('embedding_intersection', np_,
                                   2 * max(nr, ns), 2.0, inst)
    split = sum_norm_upper(f, r, s, np_) if np_ > 0 else 0.0
    plus = InequalityReport.compare('embedding_sum', split, 2 * np_, 2.0,
                                    inst)
    return cap, plus


def _const(grid, u):
    return ReciprocalExponent(grid, np.full(grid.shape, u), u)


def check_nekvinda_minimax(f, p, p_inf_reciprocal, n_const=None):
    """Embeddings around ``L^{p_inf}`` with constants ``2[p]_N`` and ``4[p]_N``.

    Returns six reports: the min/max embeddings and both directions of the
    two intersection-space equivalences (with ``L^{p_plus}`` and
    ``L^inf``).
    """
    from .classes import nekvinda_constant
    _check_grid(f, p)
    ui = float(p_inf_reciprocal)
    N = nekvinda_constant(p, ui) if n_const is None else n_const
    if math.isinf(N):
        raise ClassViolationError('[p]_N is infinite for this p_inf')
    g = p.grid
    pmax = ReciprocalExponent(g, np.minimum(p.u, ui), min(p.u_tail, ui))
    pmin = ReciprocalExponent(g, np.maximum(p.u, ui), max(p.u_tail, ui))
    _, p_plus = essential_bounds(p)
    u_plus = 0.0 if math.isinf(p_plus) else 1.0 / p_plus

    nf = norm(f, p)
    n_inf_exp = norm(f, _const(g, ui))
    n_plus = norm(f, _const(g, u_plus))
    n_sup = infinity_norm(f)
    inst = digest(f.values, p.u, ui)
    reps = [
        InequalityReport.compare('nekvinda_max', nf, 2 * N * norm(f, pmax),
                                 2 * N, inst),
        InequalityReport.compare('nekvinda_min', norm(f, pmin), 2 * N * nf,
                                 2 * N, inst),
        InequalityReport.compare('cap_plus_forward', max(nf, n_plus),
                                 4 * N * max(n_inf_exp, n_plus), 4 * N, inst),
        InequalityReport.compare('cap_plus_backward', max(n_inf_exp, n_plus),
                                 4 * N * max(nf, n_plus), 4 * N, inst),
        InequalityReport.compare('cap_inf_forward', max(nf, n_sup),
                                 4 * N * max(n_inf_exp, n_sup), 4 * N, inst),
        InequalityReport.compare('cap_inf_backward', max(n_inf_exp, n_sup),
                                 4 * N * max(nf, n_sup), 4 * N, inst),
    ]
    return reps
