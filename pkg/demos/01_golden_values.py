"""Exact modular values for constant exponents and two convergence failures.

Run: python demos/01_golden_values.py
"""

from varlp import approximation as apx
from varlp.modulars import ModularKind, modular

print('modular values on (0, 1) for constant exponents')
rv = apx.remark_values(10)
for k, (one, er, kr) in enumerate(zip(rv['rho_one'], rv['rho_er_two'],
                                      rv['rho_kr_two']), 1):
    print(f'  p = {k:2d}: rho(1) = {one:g}   rho_er(2) = {er:g}   '
          f'rho_kr(2) = {kr:g}')
print(f'  p = inf: rho(1) = {rv["rho_inf_one"]:g}   rho_er(2) = '
      f'{rv["rho_er_inf_two"]:g}   rho_kr(2) = {rv["rho_kr_inf_two"]:g}')

print('\nexponent inf on (1/(k+1), 1/k), 1 elsewhere; f = 2 on (0, 1)')
f, p, seq = apx.oscillating_counterexample(10)
for k in (1, 2, 5, 10):
    print(f'  k = {k:2d}: rho_tilde = '
          f'{modular(ModularKind.RHO_TILDE, f, seq(k))}')
print(f'  pointwise limit p = 1: rho_tilde = '
      f'{modular(ModularKind.RHO_TILDE, f, p)}')
rep = apx.convergence_suite(p, f, k_list=range(1, 11), sequence=seq,
                            probe=10)
print(f'  envelope modulars {rep.envelopes}; classification: '
      f'{rep.classification}')

print('\nf = 1/x on [1, inf): exponent 2, then 2 switching to 1 at x = k')
print(f'  exponent 2: rho_tilde = {apx.decay_counterexample():.10f} '
      '(sampled on [1, 1024) plus the exact tail)')
for k in (2, 10, 100):
    print(f'  switch at {k:3d}: rho_tilde = {apx.decay_counterexample(k=k)}')
