import numpy as np
import pytest

import decolab as dl
from util import max_abs, random_amplitudes, random_density, random_energies, random_params


def _random_2x2(rng):
    return rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))


class TestPauliConstants:
    def test_jump_operator_products(self):
        assert max_abs(dl.SIGMA_PLUS @ dl.SIGMA_MINUS - np.diag([1.0, 0.0])) == 0.0
        assert max_abs(dl.SIGMA_MINUS @ dl.SIGMA_PLUS - np.diag([0.0, 1.0])) == 0.0

    def test_ladder_from_pauli_combination(self):
        assert max_abs(0.5 * (dl.SIGMA1 + 1j * dl.SIGMA2) - dl.SIGMA_PLUS) == 0.0
        assert max_abs(0.5 * (dl.SIGMA1 - 1j * dl.SIGMA2) - dl.SIGMA_MINUS) == 0.0


class TestKron:
    def test_identity_blocks(self):
        assert max_abs(dl.kron(dl.IDENTITY2, dl.IDENTITY2) - np.eye(4)) == 0.0

    def test_diagonal_block_structure(self):
        out = dl.kron(np.diag([2.0, 3.0]), dl.IDENTITY2)
        assert max_abs(out - np.diag([2.0, 2.0, 3.0, 3.0])) == 0.0

    def test_sigma1_with_sigma1_is_antidiagonal(self):
        expected = np.fliplr(np.eye(4))
        assert max_abs(dl.kron(dl.SIGMA1, dl.SIGMA1) - expected) == 0.0

    def test_mixed_product_property(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            a1, a2, b1, b2 = (_random_2x2(rng) for _ in range(4))
            lhs = dl.kron(a1, b1) @ dl.kron(a2, b2)
            rhs = dl.kron(a1 @ a2, b1 @ b2)
            assert max_abs(lhs - rhs) <= 1e-13

    def test_dagger_and_transpose_distribute(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            a, b = _random_2x2(rng), _random_2x2(rng)
            assert max_abs(dl.kron(a, b).conj().T - dl.kron(a.conj().T, b.conj().T)) <= 1e-14
            assert max_abs(dl.kron(a, b).T - dl.kron(a.T, b.T)) <= 1e-14


class TestBuildHHat:
    def test_diagonal_hamiltonian(self):
        ham = dl.TwoLevelHamiltonian(0.0, 0.0j, 2.0)
        expected = -1j * np.diag([0.0, -2.0, 2.0, 0.0])
        assert max_abs(dl.build_h_hat(ham) - expected) <= 1e-15

    def test_real_coupling_pattern(self):
        # h = l, k = 1/2: all nonzero entries are +-i/2.
        ham = dl.TwoLevelHamiltonian(1.0, 0.5 + 0.0j, 1.0)
        half = 0.5j
        expected = np.array(
            [
                [0, half, -half, 0],
                [half, 0, 0, -half],
                [-half, 0, 0, half],
                [0, -half, half, 0],
            ],
            dtype=complex,
        )
        assert max_abs(dl.build_h_hat(ham) - expected) <= 1e-15

    def test_kron_route_equals_explicit_route(self):
        rng = np.random.default_rng(37)
        for _ in range(300):
            ham = dl.dressed_hamiltonian(random_amplitudes(rng), random_energies(rng))
            assert max_abs(dl.build_h_hat(ham) - dl.build_h_hat_explicit(ham)) <= 1e-14


class TestBuildDHat:
    def test_symmetric_rates_matrix(self):
        expected = np.array(
            [
                [-1.0, 0.0, 0.0, 1.0],
                [0.0, -1.0, 0.0, 0.0],
                [0.0, 0.0, -1.0, 0.0],
                [1.0, 0.0, 0.0, -1.0],
            ],
            dtype=complex,
        )
        assert max_abs(dl.build_d_hat(dl.LindbladRates(1.0, 1.0)) - expected) == 0.0

    def test_maximally_mixed_is_stationary_for_symmetric_rates(self):
        d_hat = dl.build_d_hat(dl.LindbladRates(0.7, 0.7))
        psi = np.array([0.5, 0.0, 0.0, 0.5], dtype=complex)
        assert max_abs(d_hat @ psi) == 0.0

    def test_trace_rows_cancel(self):
        d_hat = dl.build_d_hat(dl.LindbladRates(1.0, 3.0))
        assert max_abs(d_hat[0] + d_hat[3]) == 0.0


class TestDissipatorApply:
    def test_ket0_decay_channel(self):
        # nu must stay positive; 1e-30 keeps its contribution far below
        # the 1e-13 comparison tolerance.
        out = dl.dissipator_apply(dl.KET0, dl.LindbladRates(1.0, 1e-30))
        assert max_abs(out - np.diag([-1.0, 1.0])) <= 1e-13

    def test_maximally_mixed_stationary(self):
        mixed = dl.DensityMatrix2(0.5, 0.0j, 0.5)
        out = dl.dissipator_apply(mixed, dl.LindbladRates(1.3, 1.3))
        assert max_abs(out) == 0.0

    def test_dual_path_specific_rates(self):
        rng = np.random.default_rng(41)
        rates = dl.LindbladRates(2.0, 5.0)
        for _ in range(100):
            rho = random_density(rng)
            direct = dl.dissipator_apply(rho, rates)
            via_generator = dl.build_d_hat(rates) @ dl.vectorize(rho)
            direct_vec = np.array([direct[0, 0], direct[0, 1], direct[1, 0], direct[1, 1]])
            assert max_abs(direct_vec - via_generator) <= 1e-13


class TestBuildW:
    def test_trace_preservation_rows(self):
        rng = np.random.default_rng(43)
        for _ in range(300):
            amps, energies, rates = random_params(rng)
            w = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates)
            assert max_abs(w[0] + w[3]) <= 1e-14

    def test_no_coupling_block_decoupling(self):
        # k = 0: the (a, d) sector and the (b, conj b) sector evolve independently.
        ham = dl.dressed_hamiltonian(dl.make_amplitudes(1.0, 0.0), dl.EnergyPair(0.0, 1.5))
        w = dl.build_w(ham, dl.LindbladRates(1.0, 2.0))
        for i in (0, 3):
            for j in (1, 2):
                assert w[i, j] == 0.0
                assert w[j, i] == 0.0

    def test_zero_rates_not_constructible(self):
        with pytest.raises(ValueError):
            dl.LindbladRates(0.0, 0.0)

    def test_derivative_preserves_hermiticity_structure(self):
        rng = np.random.default_rng(47)
        for _ in range(300):
            amps, energies, rates = random_params(rng)
            w = dl.build_w(dl.dressed_hamiltonian(amps, energies), rates)
            dpsi = w @ dl.vectorize(random_density(rng))
            assert abs(dpsi[2] - np.conj(dpsi[1])) <= 1e-13

    def test_full_master_equation_dual_path(self):
        # -i[H, rho] + D rho, flattened, must equal W @ vec(rho).
        rng = np.random.default_rng(53)
        for _ in range(200):
            amps, energies, rates = random_params(rng)
            ham = dl.dressed_hamiltonian(amps, energies)
            rho = random_density(rng)
            h, r = ham.matrix(), rho.matrix()
            rhs = -1j * (h @ r - r @ h) + dl.dissipator_apply(rho, rates)
            rhs_vec = np.array([rhs[0, 0], rhs[0, 1], rhs[1, 0], rhs[1, 1]])
            lhs_vec = dl.build_w(ham, rates) @ dl.vectorize(rho)
            assert max_abs(lhs_vec - rhs_vec) <= 1e-13
