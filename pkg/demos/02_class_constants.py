"""Muckenhoupt and Nekvinda constants for a few exponent families.

Run: python demos/02_class_constants.py
"""

import math

import numpy as np

from varlp.classes import best_p_infinity, class_constants
from varlp.generators import log_holder_exponent, step_exponent
from varlp.grid import ReciprocalExponent, constant_exponent, make_cube, \
    make_grid

g = make_grid(1, 2, 0, 36)  # [0, 3) with cells of 1/12
families = {
    'constant 3': constant_exponent(g, 3),
    'step 1.5 | 3, tail 2': step_exponent(
        g, [(make_cube(g, 0, 1), 1.5), (make_cube(g, 1, 1), 3.0)], 2.0),
    'inf on [1, 2), tail 1.5': step_exponent(
        g, [(make_cube(g, 1, 1), math.inf)], 1.5),
    'log-Hoelder around 1/2': log_holder_exponent(g, 0.5, 0.3, 4.0, [1.5]),
    'jump 1 | inf': ReciprocalExponent(
        g, np.where(np.arange(36) < 18, 1.0, 0.0), 0.5),
}
print(f'{"family":28s} {"[p]_A":>10s} {"[p]_N":>10s} {"best 1/p_inf":>13s}')
for name, p in families.items():
    c = class_constants(p)
    ui, best = best_p_infinity(p)
    print(f'{name:28s} {c.a_const:10.5f} {c.n_const:10.5f} {ui:13.3f}')

print('\nthe jump from p = 1 to p = inf makes [p]_A grow with resolution:')
for M in range(5):
    gm = make_grid(1, M, 0, 6 * 2 ** M)
    u = np.where(np.arange(gm.cells[0]) < gm.cells[0] // 2, 1.0, 0.0)
    p = ReciprocalExponent(gm, u, 0.5)
    print(f'  cell 2^-{M}/3: [p]_A = {class_constants(p).a_const:.5f}')
