#!/usr/bin/env python3
"""How good is exp(tD) exp(tH) as a stand-in for exp(t(H+D))?

The splitting ladder answers numerically: truncating the product
expansion after exp(tB) exp(tA) leaves an O(t^2) defect; keeping the
commutator factor pushes it to O(t^3); keeping the cubic factor to
O(t^4).  A halving ladder of t values plus a log-log fit measures the
achieved order directly.  When the two generators commute (no coherent
coupling, k = 0) every truncation is exact.
"""

import numpy as np

import decolab as dl

amps = dl.make_amplitudes(0.6, 0.8j)
energies = dl.EnergyPair(0.0, 1.0)
rates = dl.LindbladRates(1.0, 3.0)

h_hat = dl.build_h_hat(dl.dressed_hamiltonian(amps, energies))
d_hat = dl.build_d_hat(rates)
t0 = 0.1 / dl.inf_norm(h_hat + d_hat)

for order in (2, 3):
    result = dl.order_check(h_hat, d_hat, order, t0, halvings=5)
    print("--- order-%d truncation ---" % order)
    for t, err in zip(result.t_values, result.errors):
        print("  t = %.6e   defect = %.6e" % (t, err))
    print("fitted slope: %.3f (expected %.0f)" % (result.fitted_slope, result.expected_slope()))
    print()

print("--- commuting pair (k = 0) ---")
h_flat = dl.build_h_hat(dl.dressed_hamiltonian(dl.make_amplitudes(1.0, 0.0), energies))
print("||[H_hat, D_hat]|| = %.2e" % dl.inf_norm(dl.commutator(h_flat, d_hat)))
t = 0.7
target = dl.matrix_exp(t * (h_flat + d_hat))
for order in (1, 2, 3):
    defect = dl.inf_norm(dl.zassenhaus_product(t, h_flat, d_hat, order) - target)
    print("order %d product defect at t = %.1f: %.2e" % (order, t, defect))
try:
    dl.order_check(h_flat, d_hat, 2, t0, halvings=5)
except dl.DegenerateCase as exc:
    print("order_check refuses the commuting pair:", exc)
