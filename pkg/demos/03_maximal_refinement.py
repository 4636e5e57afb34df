"""Refinement study of ||Mf|| / ||f||: bounded for p^- > 1, growing for p = 1.

Run: python demos/03_maximal_refinement.py
"""

import numpy as np

from varlp.generators import instance_rng, prolongate, random_function, \
    step_exponent
from varlp.grid import GridFunction, constant_exponent, make_cube, make_grid
from varlp.maximal import maximal_ratio


def family(M):
    g = make_grid(1, M, 0, 9 * 2 ** M)
    return step_exponent(g, [(make_cube(g, 0, 1), 1.5),
                             (make_cube(g, 1, 1), 3.0)], 2.0)


base = family(0).grid
fs = [random_function(instance_rng(0, i, 5), base) for i in range(50)]
fs = [f for f in fs if not f.is_zero()]
print('step exponent 1.5 | 3 | 2 on [0, 3), 50 fixed random f')
prev = None
for M in range(6):
    p = family(M)
    r = max(maximal_ratio(prolongate(f, M), p) for f in fs)
    change = '' if prev is None else f'  ({100 * (r / prev - 1):+.2f}%)'
    print(f'  level {M}: sup ratio {r:.5f}{change}')
    prev = r

print('\np = 1, unit mass spike at the center of [0, 3)^2')
prev = None
for M in range(4):
    g = make_grid(2, M, (0, 0), (9 * 2 ** M, 9 * 2 ** M))
    v = np.zeros(g.shape)
    c = g.cells[0] // 2
    v[c, c] = 1 / g.cell_volume
    r = maximal_ratio(GridFunction(g, v), constant_exponent(g, 1))
    growth = '' if prev is None else f'  (x{r / prev:.3f})'
    print(f'  level {M}: ratio {r:.4f}{growth}')
    prev = r
