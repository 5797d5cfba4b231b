"""4x4 generators acting on the flattened state (a, b, conj(b), d).

The master equation d rho/dt = -i[H, rho] + D rho becomes the linear
system d psi/dt = W psi with W = H_hat + D_hat, where

    H_hat = -i (H kron 1 - 1 kron H^T)        (coherent part)
    D_hat = the jump/damping part, diagonal plus corner couplings.

For the (a, b, conj(b), d) ordering, row-major flattening of the 2x2
state makes the identity vec(A rho B) = (A kron B^T) vec(rho) hold with
the plain numpy Kronecker product.  Rows 1 and 4 of W cancel exactly,
which is trace preservation seen at the generator level.
"""

from __future__ import annotations

import numpy as np

from .core_types import DensityMatrix2, LindbladRates, TwoLevelHamiltonian

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; for 2x2 blocks this is the 4x4 mixed product."""
    return np.kron(a, b)


def build_h_hat(ham: TwoLevelHamiltonian) -> np.ndarray:
    """Coherent generator -i (H kron 1 - 1 kron H^T)."""
    h = ham.matrix()
    return -1.0j * (kron(h, IDENTITY2) - kron(IDENTITY2, h.T))


def build_h_hat_explicit(ham: TwoLevelHamiltonian) -> np.ndarray:
    """Coherent generator written out entry by entry.

    Redundant with :func:`build_h_hat`; kept as an independent
    construction so tests can catch transcription or sign errors in
    either route.
    """
    k = ham.k
    kc = np.conj(k)
    delta = ham.l - ham.h
    pre = np.array(
        [
            [0.0, -kc, k, 0.0],
            [-k, -delta, 0.0, k],
            [kc, 0.0, delta, -kc],
            [0.0, kc, -k, 0.0],
        ],
        dtype=complex,
    )
    return -1.0j * pre


def build_d_hat(rates: LindbladRates) -> np.ndarray:
    """Damping generator: corner pumping between a and d, uniform
    coherence decay at half the total rate."""
    mu, nu = rates.mu, rates.nu
    half = 0.5 * (mu + nu)
    return np.array(
        [
            [-mu, 0.0, 0.0, nu],
            [0.0, -half, 0.0, 0.0],
            [0.0, 0.0, -half, 0.0],
            [mu, 0.0, 0.0, -nu],
        ],
        dtype=complex,
    )


def dissipator_apply(rho: DensityMatrix2, rates: LindbladRates) -> np.ndarray:
    """Apply the dissipator directly in 2x2 operator form.

    D rho = mu (s- rho s+ - {s+ s-, rho}/2) + nu (s+ rho s- - {s- s+, rho}/2)

    Vectorizing this must reproduce build_d_hat applied to the flattened
    state; the two routes are kept independent on purpose.
    """
    r = rho.matrix()
    n_up = SIGMA_PLUS @ SIGMA_MINUS
    n_dn = SIGMA_MINUS @ SIGMA_PLUS
    term_mu = SIGMA_MINUS @ r @ SIGMA_PLUS - 0.5 * (n_up @ r + r @ n_up)
    term_nu = SIGMA_PLUS @ r @ SIGMA_MINUS - 0.5 * (n_dn @ r + r @ n_dn)
    return rates.mu * term_mu + rates.nu * term_nu


def build_w(ham: TwoLevelHamiltonian, rates: LindbladRates) -> np.ndarray:
    """Full generator W = H_hat + D_hat."""
    return build_h_hat(ham) + build_d_hat(rates)
