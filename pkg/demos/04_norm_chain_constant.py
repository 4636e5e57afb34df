"""Why ||f||_kr <= 2 ||f||_tilde can fail, and the best constant.

Take one cell with p = inf and |f| = 1, and put the whole tilde modular
(mass 1) on cells with a single exponent q.  Then ||f||_tilde = 1 while
||f||_kr is the root lambda of  q lambda^-q + 1/lambda = 1.  For fixed
lambda the kr modular is linear in how the tilde mass is split over
exponents, so one exponent is the worst case and the best constant is
max over q of that root.

Run: python demos/04_norm_chain_constant.py
"""

import math

import numpy as np

from varlp.grid import GridFunction, ReciprocalExponent, make_grid
from varlp.luxemburg import norm
from varlp.modulars import ModularKind


def root(q):
    lo, hi = 1.0, 4.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if q * mid ** -q + 1 / mid <= 1 else (mid, hi)
    return hi


qs = np.linspace(1.0, 6.0, 5001)[1:]
vals = np.array([root(q) for q in qs])
i = int(vals.argmax())
print(f'best constant {vals[i]:.6f} at q = {qs[i]:.4f}')
print(f'q = 1/ln 2 gives {root(1 / math.log(2)):.6f};'
      f' q * 2^-q peaks at {1 / (math.e * math.log(2)):.4f} > 1/2')

g = make_grid(1, 0, 0, 2)
q = float(qs[i])
p = ReciprocalExponent(g, [0.0, 1 / q], 0.5)
f = GridFunction(g, [1.0, (3 * q) ** (1 / q)])
t = norm(f, p, ModularKind.RHO_TILDE)
r = norm(f, p)
k = norm(f, p, ModularKind.RHO_KR)
print(f'\ngrid check: tilde {t:.6f}, rho {r:.6f}, kr {k:.6f}')
print(f'  kr / tilde = {k / t:.6f}   kr / rho = {k / r:.6f}   '
      f'rho / tilde = {r / t:.6f}')
