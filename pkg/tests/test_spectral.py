import math

import numpy as np
import pytest

import decolab as dl
from util import (
    assert_multiset_close,
    equal_weight_amplitudes,
    max_abs,
    random_energies,
    random_params,
    random_rates,
)


class TestCharacteristicCubic:
    def test_direct_arithmetic_example(self):
        coeffs = dl.characteristic_cubic(
            dl.make_amplitudes(0.6, 0.8), dl.EnergyPair(0.0, 2.0), dl.LindbladRates(1.0, 1.0)
        )
        assert coeffs.a2 == pytest.approx(1.0, abs=1e-15)
        assert coeffs.a1 == pytest.approx(4.0, abs=1e-15)
        assert coeffs.a0 == pytest.approx(0.3136, abs=1e-15)

    def test_equal_weights_kill_constant_term(self):
        rng = np.random.default_rng(97)
        for _ in range(50):
            coeffs = dl.characteristic_cubic(
                equal_weight_amplitudes(rng), random_energies(rng), random_rates(rng)
            )
            assert coeffs.a0 <= 1e-30 * coeffs.a1 * coeffs.a2

    def test_basis_state_constant_term(self):
        energies = dl.EnergyPair(0.0, 1.7)
        rates = dl.LindbladRates(0.6, 1.0)
        coeffs = dl.characteristic_cubic(dl.make_amplitudes(1.0, 0.0), energies, rates)
        assert coeffs.a0 == pytest.approx(energies.gap**2 * rates.total / 2.0, abs=1e-14)

    def test_hamiltonian_route_agrees(self):
        rng = np.random.default_rng(101)
        for _ in range(300):
            amps, energies, rates = random_params(rng)
            direct = dl.characteristic_cubic(amps, energies, rates)
            via_ham = dl.characteristic_cubic_from_hamiltonian(
                dl.dressed_hamiltonian(amps, energies), rates
            )
            assert abs(direct.a2 - via_ham.a2) <= 1e-10
            assert abs(direct.a1 - via_ham.a1) <= 1e-10
            assert abs(direct.a0 - via_ham.a0) <= 1e-10

    def test_invalid_coefficients_rejected(self):
        with pytest.raises(ValueError):
            dl.CubicCoefficients(a2=0.0, a1=1.0, a0=0.0)
        with pytest.raises(ValueError):
            dl.CubicCoefficients(a2=1.0, a1=0.0, a0=0.0)
        with pytest.raises(ValueError):
            dl.CubicCoefficients(a2=1.0, a1=1.0, a0=-0.1)


class TestSolveCubic:
    def test_equal_weight_real_pair(self):
        roots = dl.solve_cubic(dl.CubicCoefficients(a2=4.0, a1=1.0, a0=0.0))
        assert_multiset_close(roots, [0.0, -2.0 + math.sqrt(3.0), -2.0 - math.sqrt(3.0)], 1e-12)

    def test_equal_weight_conjugate_pair(self):
        roots = dl.solve_cubic(dl.CubicCoefficients(a2=1.0, a1=4.0, a0=0.0))
        expected = [0.0, complex(-0.5, math.sqrt(15.0) / 2.0), complex(-0.5, -math.sqrt(15.0) / 2.0)]
        assert_multiset_close(roots, expected, 1e-12)
        # Complex pair sits at real part -(a2)/2 = -(mu+nu)/4.
        assert roots[1].real == pytest.approx(-0.5, abs=1e-12)
        assert roots[2].real == pytest.approx(-0.5, abs=1e-12)

    def test_general_case_residuals_and_bracket(self):
        rng = np.random.default_rng(103)
        for _ in range(500):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            coeffs = dl.characteristic_cubic(amps, energies, rates)
            roots = dl.solve_cubic(coeffs)
            for root in roots:
                assert abs(coeffs.value(root)) <= 1e-10 * coeffs.residual_scale()
            real_root = roots[0]
            assert real_root.imag == 0.0
            assert -coeffs.a2 < real_root.real < 0.0
            # Deflated quadratic constant term stays positive.
            q = (real_root.real + coeffs.a2) * real_root.real + coeffs.a1
            assert q > 0.0

    def test_equal_weight_matches_general_solver(self):
        rng = np.random.default_rng(107)
        for _ in range(100):
            amps = equal_weight_amplitudes(rng)
            energies = random_energies(rng)
            rates = random_rates(rng)
            coeffs = dl.characteristic_cubic(amps, energies, rates)
            closed = dl.equal_weight_roots(coeffs)
            if coeffs.a0 > 0.0:
                general = dl.bracketed_roots(coeffs)
                assert_multiset_close(general, closed, 1e-10)

    def test_equal_weight_solver_rejects_generic_coefficients(self):
        with pytest.raises(ValueError):
            dl.equal_weight_roots(dl.CubicCoefficients(a2=1.0, a1=1.0, a0=0.3))

    def test_bracket_failure_on_bad_coefficients(self):
        # a0 > a1*a2 breaks f(-a2) < 0; no generator produces this.
        with pytest.raises(dl.BracketFailure):
            dl.bracketed_roots(dl.CubicCoefficients(a2=1.0, a1=1.0, a0=2.0))


class TestWSpectrum:
    def test_block_decoupled_closed_form(self):
        # k = 0: population block gives {0, -(mu+nu)}, coherence block
        # gives -(mu+nu)/2 +- i(e1-e0).
        energies = dl.EnergyPair(0.0, 1.3)
        rates = dl.LindbladRates(0.7, 1.1)
        spectrum = dl.w_spectrum(dl.make_amplitudes(1.0, 0.0), energies, rates)
        s = rates.total
        expected = [0.0, -s, complex(-s / 2.0, energies.gap), complex(-s / 2.0, -energies.gap)]
        assert_multiset_close(spectrum.eigenvalues(), expected, 1e-10)

    def test_matches_numpy_eigenvalues(self):
        rng = np.random.default_rng(109)
        for _ in range(200):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            spectrum = dl.w_spectrum(amps, energies, rates)
            w = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates)
            assert_multiset_close(np.linalg.eigvals(w), spectrum.eigenvalues(), 1e-9)

    def test_zero_mode_always_present(self):
        rng = np.random.default_rng(113)
        for _ in range(1000):
            amps, energies, rates = random_params(rng)
            w = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates)
            assert min(abs(np.linalg.eigvals(w))) <= 1e-12

    def test_eigenpair_residuals(self):
        rng = np.random.default_rng(127)
        for _ in range(200):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            spectrum = dl.w_spectrum(amps, energies, rates)
            wt = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates).T
            for idx, lam in enumerate(spectrum.eigenvalues()):
                vec = spectrum.o_matrix[:, idx]
                assert max_abs(wt @ vec - lam * vec) <= 1e-9

    def test_transpose_diagonalization(self):
        rng = np.random.default_rng(131)
        for _ in range(100):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            spectrum = dl.w_spectrum(amps, energies, rates)
            wt = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates).T
            diag = np.diag(spectrum.eigenvalues())
            assert max_abs(wt @ spectrum.o_matrix - spectrum.o_matrix @ diag) <= 1e-9

    def test_structure_of_spectrum(self):
        rng = np.random.default_rng(137)
        for _ in range(300):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            spectrum = dl.w_spectrum(amps, energies, rates)
            assert spectrum.lambda1 == 0.0
            assert spectrum.lambda2.imag == 0.0
            assert spectrum.lambda2.real < 0.0
            assert spectrum.lambda3.real < 0.0
            assert spectrum.lambda4.real < 0.0
            pair_real = abs(spectrum.lambda3.imag) <= 1e-10 and abs(spectrum.lambda4.imag) <= 1e-10
            pair_conj = abs(spectrum.lambda3 - np.conj(spectrum.lambda4)) <= 1e-10
            assert pair_real or pair_conj

    def test_zero_mode_column_pattern(self):
        rng = np.random.default_rng(139)
        for _ in range(100):
            amps, energies, rates = random_params(rng, min_imbalance=0.05)
            spectrum = dl.w_spectrum(amps, energies, rates)
            assert max_abs(spectrum.o_matrix[:, 0] - np.array([1.0, 0.0, 0.0, 1.0])) <= 1e-12

    def test_cofactors_match_inverse_row(self):
        rng = np.random.default_rng(149)
        amps, energies, rates = random_params(rng, min_imbalance=0.2)
        spectrum = dl.w_spectrum(amps, energies, rates)
        inv_row = np.linalg.inv(spectrum.o_matrix)[0]
        assert max_abs(spectrum.cofactors_row1 / spectrum.o_det - inv_row) <= 1e-12

    def test_degenerate_double_root_refused(self):
        # Equal weights with gap = (mu+nu)/4 collide the quadratic pair.
        rates = dl.LindbladRates(2.0, 2.0)
        energies = dl.EnergyPair(0.0, 1.0)
        r = 1.0 / math.sqrt(2.0)
        with pytest.raises(dl.DegenerateSpectrum):
            dl.w_spectrum(dl.make_amplitudes(r, r), energies, rates)

    def test_near_collision_of_real_roots_refused(self):
        # Equal weights with a tiny gap push one quadratic root onto the
        # shifted real root.
        rates = dl.LindbladRates(1.0, 1.0)
        energies = dl.EnergyPair(0.0, 1e-5)
        r = 1.0 / math.sqrt(2.0)
        with pytest.raises(dl.DegenerateSpectrum):
            dl.w_spectrum(dl.make_amplitudes(r, r), energies, rates)
