"""Luxemburg norms by monotone bracketing and bisection.

For every modular kind ``lam -> modular(f / lam)`` is non-increasing, so the
norm ``inf{lam > 0 : modular(f / lam) <= 1}`` is found by bracketing from
``lam0 = max|f|`` (where the modular is finite) and bisecting in log scale.
The returned value is the upper end of the final bracket, hence always
admissible: ``modular(f / value) <= 1``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import (DegenerateInputError, DomainError, GridMismatchError,
                         PreconditionError)
from .grid import GridFunction, essential_bounds
from .modulars import ModularKind, modular

__all__ = ('NormResult', 'luxemburg_norm', 'norm', 'norm_arrays',
           'norm_trick_bound', 'conjugate_witness', 'DEFAULT_RTOL')

DEFAULT_RTOL = 1e-10


@dataclass(frozen=True)
class NormResult:
    value: float
    kind: ModularKind
    bracket: tuple
    iterations: int
    rel_tol: float

    def __float__(self):
        return self.value


def _modular_fn(kind, a, u, vol):
    """Return ``lam -> modular(a / lam)`` with the cell bookkeeping hoisted."""
    fin = u > 0
    af = a[fin]
    with np.errstate(over='ignore'):
        pf = 1.0 / u[fin]  # subnormal reciprocals give p = inf
    wf = u[fin] if kind is ModularKind.RHO_TILDE else None
    ainf = a[~fin]
    sup_inf = float(ainf.max()) if ainf.size else 0.0

    def F(lam):
        with np.errstate(over='ignore'):
            t = np.power(af / lam, pf)
            if wf is not None:
                t = wf * t
            s = vol * float(t.sum())
        r = sup_inf / lam
        if kind is ModularKind.RHO or kind is ModularKind.RHO_TILDE:
            return math.inf if r > 1.0 else s
        if kind is ModularKind.RHO_ER:
            return max(s, r)
        return s + r

    return F


def norm_arrays(kind, a, u, vol, rel_tol=DEFAULT_RTOL):
    """Bisection core on raw arrays; returns ``(value, lo, hi, iterations)``."""
    a = np.abs(np.asarray(a, dtype=float)).ravel()
    u = np.asarray(u, dtype=float).ravel()
    nz = a > 0
    if not nz.any():
        return 0.0, 0.0, 0.0, 0
    a, u = a[nz], u[nz]
    F = _modular_fn(kind, a, u, vol)
    lam0 = float(a.max())
    it = 0
    if F(lam0) <= 1.0:
        hi, lo = lam0, lam0 / 2
        while F(lo) <= 1.0:
            hi, lo = lo, lo / 2
            it += 1
    else:
        lo, hi = lam0, 2 * lam0
        while F(hi) > 1.0:
            lo, hi = hi, 2 * hi
            it += 1
    while hi / lo - 1.0 > rel_tol:
        mid = lo * math.sqrt(hi / lo)  # lo * hi under/overflows at extremes
        if not lo < mid < hi:
            break
        if F(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        it += 1
    return hi, lo, hi, it


def luxemburg_norm(kind, f, p, rel_tol=DEFAULT_RTOL):
    """Luxemburg norm of ``f`` induced by modular ``kind`` and exponent ``p``.

    Parameters
    ----------
    kind : ModularKind
    f : GridFunction
    p : ReciprocalExponent
    rel_tol : float, optional
        Stop once ``hi / lo - 1 <= rel_tol``; must lie in ``(0, 1/2)``.

    Returns
    -------
    NormResult
        ``value`` is the upper end of the final bracket; ``f = 0`` gives an
        exact 0.
    """
    if not 0 < rel_tol < 0.5:
        raise DomainError(f'rel_tol must lie in (0, 1/2), got {rel_tol}')
    if f.grid != p.grid:
        raise GridMismatchError('function and exponent live on different grids')
    if not np.all(np.isfinite(f.values)):
        raise DomainError('function values must be finite')
    val, lo, hi, it = norm_arrays(kind, f.values, p.u, f.grid.cell_volume,
                                  rel_tol)
    achieved = 0.0 if val == 0 else hi / lo - 1.0
    return NormResult(val, kind, (lo, hi), it, achieved)


def norm(f, p, kind=ModularKind.RHO, rel_tol=DEFAULT_RTOL):
    """Shorthand returning ``luxemburg_norm(...).value``."""
    return luxemburg_norm(kind, f, p, rel_tol).value


def norm_trick_bound(f, p, a, b):
    """Return ``(||f||, a * b**(1/p_plus))`` for ``rho(f) <= a*b``.

    Requires ``a >= 1``, ``0 < b <= 1`` and ``p_plus < inf``.
    """
    if a < 1 or not 0 < b <= 1:
        raise PreconditionError(f'need a >= 1 and b in (0, 1], got {a}, {b}')
    _, p_plus = essential_bounds(p)
    if math.isinf(p_plus):
        raise PreconditionError('the bound needs p_plus < inf')
    rho = modular(ModularKind.RHO, f, p)
    if rho > a * b:
        raise PreconditionError(f'modular {rho} exceeds a*b = {a * b}')
    return norm(f, p), a * b ** (1.0 / p_plus)


def conjugate_witness(f, p, eps=1e-3):
    """A dual function certifying the lower half of the norm conjugate formula.

    Returns ``g`` with ``||g||_{p'} <= 1`` and
    ``int |f| g >= (1 - eps) * ||f||_p / 2``.

    Two candidates are built and the better one is kept:

    * on cells with ``p < inf``: ``g = (|f| / ||f||)**(p - 1)``, whose dual
      modular equals ``rho(f / ||f||)`` restricted to those cells;
    * on cells with ``p = inf``: the normalized indicator of the cells where
      ``|f|`` is within a factor ``1 - eps`` of its maximum there (the dual
      exponent is 1 on those cells).
    """
    if not 0 < eps < 1:
        raise DomainError(f'eps must lie in (0, 1), got {eps}')
    if f.is_zero():
        raise DegenerateInputError('the witness is undefined for f = 0')
    grid = f.grid
    a = np.abs(f.values)
    lam = norm(f, p)
    fin = p.u > 0
    vol = grid.cell_volume

    gA = np.zeros(grid.shape)
    sel = fin & (a > 0)
    with np.errstate(over='ignore'):
        gA[sel] = np.power(a[sel] / lam, 1.0 / p.u[sel] - 1.0)
    mA = modular(ModularKind.RHO, GridFunction(grid, gA), p.dual())
    if mA > 1:
        gA /= mA
    pairA = float((a * gA).sum()) * vol

    gB = np.zeros(grid.shape)
    pairB = -1.0
    if (~fin).any():
        top = float(a[~fin].max())
        if top > 0:
            S = (~fin) & (a >= (1 - eps) * top)
            gB[S] = 1.0 / (S.sum() * vol)
            pairB = float((a * gB).sum()) * vol
    g = gA if pairA >= pairB else gB
    return GridFunction(grid, g)
