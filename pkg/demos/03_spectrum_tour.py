#!/usr/bin/env python3
"""The spectral route: characteristic cubic, eigenvalues, projector.

The generator W always has the eigenvalue 0 (trace preservation); the
other three eigenvalues are roots of a shifted cubic.  For equal
superposition weights the cubic factors in closed form; otherwise a
sign argument brackets its one real root inside (-(mu+nu)/2, 0) and the
remaining pair comes from quadratic deflation.  All decaying modes have
negative real part, so the zero mode is the unique stationary state and
the infinite-time projector can be written from eigenvector cofactors.
"""

import numpy as np

import decolab as dl

energies = dl.EnergyPair(0.0, 1.0)
rates = dl.LindbladRates(1.0, 3.0)

print("--- generic (unequal-weight) case ---")
amps = dl.make_amplitudes(0.6, 0.8)
coeffs = dl.characteristic_cubic(amps, energies, rates)
print("cubic coefficients: a2 = %.4f, a1 = %.4f, a0 = %.4f" % (coeffs.a2, coeffs.a1, coeffs.a0))
roots = dl.solve_cubic(coeffs)
for name, root in zip(("L0", "L+", "L-"), roots):
    print("  %s = %s   |f| = %.2e" % (name, root, abs(coeffs.value(root))))

spectrum = dl.w_spectrum(amps, energies, rates)
print("eigenvalues of W:", spectrum.eigenvalues())
print("numpy cross-check:", np.sort_complex(np.linalg.eigvals(
    dl.build_w(dl.dressed_hamiltonian(amps, energies), rates))))
print("slowest decay rate: %.4f" % spectrum.min_decay_rate())

print("\n--- equal-weight case: closed-form factorization ---")
balanced = dl.make_amplitudes(1.0, 1.0, normalize=True)
coeffs_eq = dl.characteristic_cubic(balanced, energies, dl.LindbladRates(1.0, 1.0))
print("constant term collapses: a0 = %.2e" % coeffs_eq.a0)
for name, root in zip(("L0", "L+", "L-"), dl.equal_weight_roots(coeffs_eq)):
    print("  %s = %s" % (name, root))
print("complex pair sits at real part -(mu+nu)/4 = %.2f" % dl.equal_weight_roots(coeffs_eq)[1].real)

print("\n--- infinite-time projector from cofactors ---")
closed = dl.limit_matrix_from_cofactors(spectrum)
w = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates)
t_probe = 60.0 / spectrum.min_decay_rate()
brute = dl.exact_propagator_oracle(t_probe, w)
print("||cofactor projector - exp(T W)|| at T = %.1f: %.2e"
      % (t_probe, np.max(np.abs(closed - brute))))
print("projector columns 1 and 4 coincide and carry unit trace:")
print(np.round(closed.real, 6) + 1j * np.round(closed.imag, 6))
