"""The four (semi)modulars of variable exponent Lebesgue spaces.

On a grid the integrals become sums over cells.  Cells with ``p = inf`` are
handled branch-wise: ``t**inf`` is 0 for ``t <= 1`` and ``inf`` otherwise.
Outside the box the function vanishes, so the tail never contributes.
"""

import enum
import math

import numpy as np

from .exceptions import GridMismatchError

__all__ = ('ModularKind', 'modular', 'modular_arrays')


class ModularKind(enum.Enum):
    RHO = 'rho'
    RHO_TILDE = 'rho_tilde'
    RHO_ER = 'rho_er'
    RHO_KR = 'rho_kr'


def modular_arrays(kind, a, u, vol):
    """Modular of ``|f| = a`` for reciprocal exponent ``u`` on cells of volume ``vol``.

    ``a`` and ``u`` are flat or equally shaped arrays; ``a`` must be
    nonnegative.  Returns a float, possibly ``inf``.
    """
    a = np.asarray(a, dtype=float)
    u = np.asarray(u, dtype=float)
    fin = u > 0
    infc = ~fin
    sup_inf = float(a[infc].max()) if infc.any() else 0.0

    af = a[fin]
    uf = u[fin]
    with np.errstate(over='ignore'):
        terms = np.power(af, 1.0 / uf)
        if kind is ModularKind.RHO_TILDE:
            terms = uf * terms
        s = vol * float(terms.sum())

    if kind is ModularKind.RHO or kind is ModularKind.RHO_TILDE:
        return math.inf if sup_inf > 1.0 else s
    if kind is ModularKind.RHO_ER:
        return max(s, sup_inf)
    if kind is ModularKind.RHO_KR:
        return s + sup_inf
    raise TypeError(f'unknown modular kind {kind!r}')


def modular(kind, f, p):
    """Evaluate ``kind`` on grid function ``f`` with exponent ``p``.

    Examples
    --------
    >>> from varlp.grid import make_grid, constant_exponent, GridFunction
    >>> g = make_grid(1, 0, 0, 3)
    >>> modular(ModularKind.RHO, GridFunction(g, [2, 2, 2]),
    ...         constant_exponent(g, 2))
    4.0
    """
    if f.grid != p.grid:
        raise GridMismatchError('function and exponent live on different grids')
    return modular_arrays(kind, np.abs(f.values), p.u, f.grid.cell_volume)
