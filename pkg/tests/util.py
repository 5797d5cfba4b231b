"""Shared random-draw helpers for the test suite.

All draws go through a caller-provided numpy Generator so every test is
seeded and reproducible.
"""

import numpy as np

import decolab as dl


def random_amplitudes(rng, min_weight=0.02, min_imbalance=0.0):
    """Random normalized amplitudes with random phases.

    min_weight bounds both populations away from 0/1; min_imbalance
    bounds |w0 - w1| away from the equal-weight degeneracy.
    """
    while True:
        w0 = rng.uniform(min_weight, 1.0 - min_weight)
        if abs(2.0 * w0 - 1.0) >= min_imbalance:
            break
    phase_a, phase_b = rng.uniform(0.0, 2.0 * np.pi, size=2)
    return dl.make_amplitudes(
        np.sqrt(w0) * np.exp(1j * phase_a),
        np.sqrt(1.0 - w0) * np.exp(1j * phase_b),
        normalize=True,
    )


def equal_weight_amplitudes(rng):
    """|alpha| = |beta| = 1/sqrt(2) with random phases."""
    phase_a, phase_b = rng.uniform(0.0, 2.0 * np.pi, size=2)
    r = np.sqrt(0.5)
    return dl.make_amplitudes(r * np.exp(1j * phase_a), r * np.exp(1j * phase_b), normalize=True)


def random_energies(rng, min_gap=0.3, max_gap=2.5):
    e0 = rng.uniform(-1.0, 1.0)
    return dl.EnergyPair(e0, e0 + rng.uniform(min_gap, max_gap))


def random_rates(rng, lo=0.2, hi=2.0):
    return dl.LindbladRates(rng.uniform(lo, hi), rng.uniform(lo, hi))


def random_params(rng, min_imbalance=0.0):
    return (
        random_amplitudes(rng, min_imbalance=min_imbalance),
        random_energies(rng),
        random_rates(rng),
    )


def random_density(rng):
    """Uniform-ish random state: Bloch vector in the unit ball."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    x, y, z = rng.uniform(0.0, 1.0) ** (1.0 / 3.0) * direction
    return dl.DensityMatrix2(0.5 * (1.0 + z), 0.5 * (x - 1j * y), 0.5 * (1.0 - z))


def max_abs(arr):
    return float(np.max(np.abs(arr)))


def assert_multiset_close(got, expected, tol):
    """Greedy-match two unordered collections of complex numbers."""
    remaining = list(got)
    for target in expected:
        distances = [abs(value - target) for value in remaining]
        best = int(np.argmin(distances))
        assert distances[best] <= tol, f"no match for {target}: nearest {distances[best]:.3e}"
        remaining.pop(best)
    assert not remaining
