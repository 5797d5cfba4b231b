"""Exact diagonalization of the 4x4 generator W.

Factoring the characteristic polynomial of W gives one structural zero
eigenvalue (trace preservation) times a cubic in the shifted variable
L = lambda + (mu+nu)/2:

    L^3 + a2 L^2 + a1 L + a0 = 0,

    a2 = (mu+nu)/2,  a1 = (e1-e0)^2,
    a0 = (e1-e0)^2 (|alpha|^2-|beta|^2)^2 (mu+nu)/2.

For equal superposition weights a0 vanishes and the cubic factors in
closed form; otherwise the sign pattern f(0) > 0, f(-a2) < 0 brackets
one real root in (-a2, 0), which is isolated by bisection, polished by
safeguarded Newton, and deflated to a quadratic for the remaining pair.

Eigenvectors are extracted as null spaces of (W^T - lambda I) -- the
transpose, because (1, 0, 0, 1) is a left zero-eigenvector of W, so it
is W^T whose zero mode carries that simple pattern.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core_types import EnergyPair, LindbladRates, SuperpositionAmplitudes, dressed_hamiltonian
from .core_types import TwoLevelHamiltonian
from .errors import BracketFailure, DegenerateSpectrum
from .propagators import inf_norm
from .superoperator import build_w

#: Below this (relative to a1*a2) a0 is treated as exactly zero; the
#: amplitude-equality tolerance 1e-12 puts genuinely equal weights at
#: a0/(a1*a2) <= 4e-24, while unequal-weight draws sit many orders higher.
EQUAL_WEIGHT_TOL = 1e-20

#: Pairwise eigenvalue gap below which spectral routines refuse.
DEGENERACY_TOL = 1e-8

#: Pivot threshold factor for null-space extraction.
PIVOT_FACTOR = 1e-12

#: Bisection width target and Newton residual target for the real root.
BISECT_WIDTH = 1e-6
NEWTON_RESIDUAL = 1e-13


@dataclass(frozen=True)
class CubicCoefficients:
    """Coefficients of the shifted characteristic cubic (monic)."""

    a2: float
    a1: float
    a0: float

    def __post_init__(self):
        if not self.a2 > 0.0:
            raise ValueError(f"a2 must be positive, got {self.a2}")
        if not self.a1 > 0.0:
            raise ValueError(f"a1 must be positive, got {self.a1}")
        if self.a0 < 0.0:
            raise ValueError(f"a0 must be nonnegative, got {self.a0}")

    def value(self, x):
        """f(x) = x^3 + a2 x^2 + a1 x + a0 (accepts complex x)."""
        return ((x + self.a2) * x + self.a1) * x + self.a0

    def derivative(self, x):
        return (3.0 * x + 2.0 * self.a2) * x + self.a1

    def residual_scale(self) -> float:
        return max(1.0, self.a2, self.a1, self.a0)


def characteristic_cubic(
    amps: SuperpositionAmplitudes, energies: EnergyPair, rates: LindbladRates
) -> CubicCoefficients:
    """Cubic coefficients from the physical parameters."""
    gap_sq = energies.gap**2
    half_rate = 0.5 * rates.total
    imbalance = amps.weight0 - amps.weight1
    return CubicCoefficients(
        a2=half_rate,
        a1=gap_sq,
        a0=gap_sq * imbalance**2 * half_rate,
    )


def characteristic_cubic_from_hamiltonian(
    ham: TwoLevelHamiltonian, rates: LindbladRates
) -> CubicCoefficients:
    """Same cubic built from (l-h, |k|^2) instead of (energies, weights).

    Independent route: a1 = (l-h)^2 + 4|k|^2 and a0 = (l-h)^2 (mu+nu)/2,
    which agree with :func:`characteristic_cubic` through the identities
    (l-h)^2 + 4|k|^2 = (e1-e0)^2 and l-h = (|alpha|^2-|beta|^2)(e1-e0).
    """
    half_rate = 0.5 * rates.total
    delta_sq = ham.splitting**2
    return CubicCoefficients(
        a2=half_rate,
        a1=delta_sq + 4.0 * abs(ham.k) ** 2,
        a0=delta_sq * half_rate,
    )


def _polish(coeffs: CubicCoefficients, x: complex, steps: int = 3) -> complex:
    for _ in range(steps):
        fx = coeffs.value(x)
        dfx = coeffs.derivative(x)
        if dfx == 0:
            break
        step = fx / dfx
        x = x - step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return x


def equal_weight_roots(coeffs: CubicCoefficients) -> tuple[complex, complex, complex]:
    """Closed-form roots for the a0 = 0 factorization L (L^2 + a2 L + a1).

    Valid only when the constant term is (numerically) zero, i.e. for
    equal superposition weights.
    """
    if coeffs.a0 > EQUAL_WEIGHT_TOL * coeffs.a1 * coeffs.a2:
        raise ValueError(
            f"a0={coeffs.a0!r} is not negligible; use the general solver"
        )
    disc = coeffs.a2**2 - 4.0 * coeffs.a1
    sq = cmath.sqrt(disc)
    minus = 0.5 * (-coeffs.a2 - sq)
    if disc >= 0.0:
        # Avoid cancellation in the small real root via the product a1.
        plus = coeffs.a1 / minus
    else:
        plus = 0.5 * (-coeffs.a2 + sq)
    return 0.0 + 0.0j, plus, minus


def bracketed_roots(coeffs: CubicCoefficients) -> tuple[complex, complex, complex]:
    """General solver: bracketed real root, then quadratic deflation.

    The sign pattern f(0) = a0 >= 0 and f(-a2) < 0 guarantees a real
    root in (-a2, 0); bisection narrows the bracket to width 1e-6
    before Newton polishing (Newton alone can escape the bracket).

    Raises
    ------
    BracketFailure
        If the sign conditions fail beyond rounding tolerance; the
        coefficients then do not describe a valid generator.
    """
    lo, hi = -coeffs.a2, 0.0
    f_lo = coeffs.value(lo)
    f_hi = coeffs.a0
    sign_tol = 1e-12 * max(1.0, coeffs.a1 * coeffs.a2, coeffs.a0)
    if f_lo > sign_tol or f_hi < -sign_tol:
        raise BracketFailure(
            f"sign conditions failed: f({lo})={f_lo!r}, f(0)={f_hi!r}"
        )
    if f_hi <= 0.0:
        # a0 is zero to the last bit: the bracket endpoint is the root.
        root = 0.0
    else:
        width_target = BISECT_WIDTH * max(1.0, coeffs.a2)
        while hi - lo > width_target:
            mid = 0.5 * (lo + hi)
            if coeffs.value(mid) > 0.0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
        target = NEWTON_RESIDUAL * coeffs.residual_scale()
        for _ in range(60):
            fx = coeffs.value(root)
            if abs(fx) <= target:
                break
            if fx > 0.0:
                hi = root
            else:
                lo = root
            dfx = coeffs.derivative(root)
            nxt = root - fx / dfx if dfx != 0.0 else 0.5 * (lo + hi)
            if not lo < nxt < hi:
                nxt = 0.5 * (lo + hi)
            root = nxt
    # Deflate: f(L) = (L - root)(L^2 + p L + q).
    p = root + coeffs.a2
    q = (root + coeffs.a2) * root + coeffs.a1
    disc = p * p - 4.0 * q
    sq = cmath.sqrt(disc)
    minus = 0.5 * (-p - sq)  # p > 0 here, so no cancellation
    plus = q / minus if disc >= 0.0 else 0.5 * (-p + sq)
    plus = _polish(coeffs, plus)
    minus = _polish(coeffs, minus)
    return complex(root), plus, minus


def solve_cubic(coeffs: CubicCoefficients) -> tuple[complex, complex, complex]:
    """Roots (L0, L+, L-) of the shifted characteristic cubic.

    L0 is the real root (exactly zero for equal weights); L+ and L- are
    either both real or a conjugate pair.  Each root satisfies
    |f(L)| <= 1e-10 * max(1, coefficient scale).
    """
    if coeffs.a0 <= EQUAL_WEIGHT_TOL * coeffs.a1 * coeffs.a2:
        return equal_weight_roots(coeffs)
    return bracketed_roots(coeffs)


def _null_vector(m: np.ndarray, pivot_tol: float) -> np.ndarray:
    """Null vector by Gaussian elimination with full pivoting.

    If no pivot falls below ``pivot_tol`` the matrix is treated as rank
    n-1 anyway, using the smallest (last) pivot position as the free
    variable; eigenpair residual checks catch any resulting nonsense.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    cols = list(range(n))
    rank = n - 1
    for k in range(n):
        block = np.abs(a[k:, k:])
        pi, pj = np.unravel_index(int(np.argmax(block)), block.shape)
        if block[pi, pj] <= pivot_tol:
            rank = k
            break
        pi += k
        pj += k
        if pi != k:
            a[[k, pi], :] = a[[pi, k], :]
        if pj != k:
            a[:, [k, pj]] = a[:, [pj, k]]
            cols[k], cols[pj] = cols[pj], cols[k]
        for i in range(k + 1, n):
            factor = a[i, k] / a[k, k]
            a[i, k:] -= factor * a[k, k:]
    x = np.zeros(n, dtype=complex)
    x[rank] = 1.0
    for i in range(rank - 1, -1, -1):
        x[i] = -(a[i, i + 1 :] @ x[i + 1 :]) / a[i, i]
    out = np.zeros(n, dtype=complex)
    out[cols] = x
    return out


@dataclass(frozen=True, eq=False)
class WSpectrum:
    """Eigenvalues and (transpose-convention) eigenvectors of W.

    ``o_matrix`` holds eigenvectors of W^T as columns, ordered to match
    (lambda1, lambda2, lambda3, lambda4); the zero-mode column is scaled
    to the (1, 0, 0, 1) pattern.  ``cofactors_row1`` is the first row of
    the adjugate of ``o_matrix`` (i.e. inv(O) * det(O)), the ingredients
    of the closed-form infinite-time projector.
    """

    lambda1: float  # structurally exact zero
    lambda2: complex
    lambda3: complex
    lambda4: complex
    o_matrix: np.ndarray
    o_det: complex
    cofactors_row1: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return np.array([self.lambda1, self.lambda2, self.lambda3, self.lambda4], dtype=complex)

    def min_decay_rate(self) -> float:
        """Smallest |Re lambda| over the three decaying modes."""
        return min(abs(self.lambda2.real), abs(self.lambda3.real), abs(self.lambda4.real))


def w_spectrum(
    amps: SuperpositionAmplitudes, energies: EnergyPair, rates: LindbladRates
) -> WSpectrum:
    """Diagonalize W exactly: cubic roots shifted by -(mu+nu)/2, plus
    the structural zero mode.

    Raises
    ------
    DegenerateSpectrum
        If any two eigenvalues are closer than 1e-8; the eigenvector
        matrix would be ill-conditioned (Jordan-like), so spectral
        consumers must fall back to the brute-force propagator.
    """
    coeffs = characteristic_cubic(amps, energies, rates)
    root0, root_plus, root_minus = solve_cubic(coeffs)
    shift = 0.5 * rates.total
    lam = np.array(
        [0.0, root0.real - shift, root_plus - shift, root_minus - shift], dtype=complex
    )
    gaps = [abs(lam[i] - lam[j]) for i in range(4) for j in range(i + 1, 4)]
    if min(gaps) < DEGENERACY_TOL:
        raise DegenerateSpectrum(
            f"eigenvalue gap {min(gaps):.3e} below {DEGENERACY_TOL}; "
            "use the oracle propagator"
        )
    w = build_w(dressed_hamiltonian(amps, energies), rates)
    wt = w.T
    pivot_tol = PIVOT_FACTOR * inf_norm(w)
    identity = np.eye(4, dtype=complex)
    columns = []
    for idx, ev in enumerate(lam):
        vec = _null_vector(wt - ev * identity, pivot_tol)
        if idx == 0:
            # Zero mode of W^T is proportional to (1, 0, 0, 1).
            vec = vec / vec[0]
        else:
            vec = vec / vec[np.argmax(np.abs(vec))]
        columns.append(vec)
    o_matrix = np.column_stack(columns)
    o_det = complex(np.linalg.det(o_matrix))
    cofactors = np.linalg.inv(o_matrix)[0] * o_det
    return WSpectrum(
        lambda1=0.0,
        lambda2=complex(lam[1]),
        lambda3=complex(lam[2]),
        lambda4=complex(lam[3]),
        o_matrix=o_matrix,
        o_det=o_det,
        cofactors_row1=cofactors,
    )
