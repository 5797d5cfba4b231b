"""Value types for a driven two-level open system.

A state is a 2x2 density matrix rho = [[a, b], [conj(b), d]] with unit
trace; it travels through the solvers as the flattened 4-vector
(a, b, conj(b), d), represented as a plain ``numpy`` array of shape (4,)
(complex).  :func:`vectorize` / :func:`devectorize` are the bridge.

All types are immutable values and all operations are pure functions,
so everything here is safe to share across threads or evaluate in
parallel over a time grid.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field

import numpy as np

from .errors import NonPhysical, NotNormalized, ZeroVector

#: Construction tolerances (stricter than the evolution-time checks,
#: which allow small drift; see the propagators module).
NORM_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10

#: Gate applied by :func:`devectorize` to the conjugacy and trace structure.
VECTOR_GATE_TOL = 1e-8


@dataclass(frozen=True)
class SuperpositionAmplitudes:
    """The pair (alpha, beta) with |alpha|^2 + |beta|^2 = 1.

    Defines both the prepared superposition alpha|0> + beta|1> and the
    dressing unitary that makes it the ground state.
    """

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm_sq = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if norm_sq == 0.0:
            raise ZeroVector("amplitudes (0, 0) define no state")
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(
                f"|alpha|^2 + |beta|^2 = {norm_sq!r}, expected 1 within {NORM_TOL}"
            )

    @property
    def weight0(self) -> float:
        """|alpha|^2, the |0> population of the prepared state."""
        return abs(self.alpha) ** 2

    @property
    def weight1(self) -> float:
        """|beta|^2, the |1> population of the prepared state."""
        return abs(self.beta) ** 2


def make_amplitudes(alpha, beta, normalize: bool = False) -> SuperpositionAmplitudes:
    """Build amplitudes, optionally rescaling to unit norm.

    Parameters
    ----------
    alpha, beta : complex
        Raw amplitudes; must not both be zero.
    normalize : bool
        If set, rescale by 1/sqrt(|alpha|^2 + |beta|^2).  If unset the
        pair must already be normalized within ``NORM_TOL``; silent
        rescaling is deliberately not offered because it hides caller
        bugs.

    Raises
    ------
    ZeroVector
        If both components are zero.
    NotNormalized
        If ``normalize`` is unset and the norm is off by more than 1e-12.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if norm_sq == 0.0:
        raise ZeroVector("amplitudes (0, 0) define no state")
    if normalize:
        scale = 1.0 / math.sqrt(norm_sq)
        alpha *= scale
        beta *= scale
    return SuperpositionAmplitudes(alpha, beta)


@dataclass(frozen=True)
class EnergyPair:
    """Two energy levels e0 < e1 (hbar = 1 units).

    Strict inequality is required: degenerate levels collapse the
    spectral cubic to a repeated-root configuration the solvers do not
    treat.
    """

    e0: float
    e1: float

    def __post_init__(self):
        if not self.e0 < self.e1:
            raise ValueError(f"need e0 < e1 strictly, got e0={self.e0}, e1={self.e1}")

    @property
    def gap(self) -> float:
        return self.e1 - self.e0


@dataclass(frozen=True)
class LindbladRates:
    """Dissipator rates, both strictly positive.

    mu multiplies the sigma_minus jump channel (population |0> -> |1>),
    nu the sigma_plus one (|1> -> |0>); the jump-free stationary
    populations are nu/(mu+nu) and mu/(mu+nu).
    """

    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu > 0.0 and self.nu > 0.0):
            raise ValueError(f"rates must be positive, got mu={self.mu}, nu={self.nu}")

    @property
    def total(self) -> float:
        return self.mu + self.nu


@dataclass(frozen=True)
class DensityMatrix2:
    """2x2 hermitian, unit-trace, positive-semidefinite state.

    Only (a, b, d) are stored; the lower off-diagonal is synthesized as
    conj(b), so non-hermitian storage is unrepresentable.  Validation
    tolerances default to the construction invariants (1e-10); evolution
    routines pass looser, documented gates.
    """

    a: float
    b: complex
    d: float
    trace_tol: InitVar[float] = TRACE_TOL
    positivity_tol: InitVar[float] = POSITIVITY_TOL

    def __post_init__(self, trace_tol, positivity_tol):
        if abs(self.a + self.d - 1.0) > trace_tol:
            raise NonPhysical(f"trace {self.a + self.d!r} != 1 beyond {trace_tol}")
        det = self.a * self.d - abs(self.b) ** 2
        if self.a < -positivity_tol or self.d < -positivity_tol or det < -positivity_tol:
            raise NonPhysical(
                f"not positive semidefinite: a={self.a!r}, d={self.d!r}, "
                f"a*d-|b|^2={det!r} (tol {positivity_tol})"
            )

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [np.conj(self.b), self.d]], dtype=complex)

    @property
    def coherence(self) -> float:
        """|b|, the off-diagonal magnitude."""
        return abs(self.b)

    def min_eigenvalue(self) -> float:
        half_gap = math.hypot(0.5 * (self.a - self.d), abs(self.b))
        return 0.5 * (self.a + self.d) - half_gap


#: Computational basis projectors and the balanced superposition state.
KET0 = DensityMatrix2(1.0, 0.0j, 0.0)
KET1 = DensityMatrix2(0.0, 0.0j, 1.0)
PLUS = DensityMatrix2(0.5, 0.5 + 0.0j, 0.5)


def pure_state(amps: SuperpositionAmplitudes) -> DensityMatrix2:
    """Projector onto alpha|0> + beta|1>."""
    return DensityMatrix2(amps.weight0, amps.alpha * np.conj(amps.beta), amps.weight1)


@dataclass(frozen=True)
class TwoLevelHamiltonian:
    """Hermitian 2x2 Hamiltonian [[h, k], [conj(k), l]] with h, l real."""

    h: float
    k: complex
    l: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.h, self.k], [np.conj(self.k), self.l]], dtype=complex)

    @property
    def splitting(self) -> float:
        """l - h, the population-basis diagonal gap."""
        return self.l - self.h


def dressing_unitary(amps: SuperpositionAmplitudes) -> np.ndarray:
    """Special unitary [[alpha, -conj(beta)], [beta, conj(alpha)]].

    Maps |0> to the prepared superposition; U dagger U = 1 and det U = 1
    hold to machine precision for any valid amplitudes.
    """
    a, b = amps.alpha, amps.beta
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def dressed_hamiltonian(
    amps: SuperpositionAmplitudes, energies: EnergyPair
) -> TwoLevelHamiltonian:
    """Conjugate diag(e0, e1) by the dressing unitary.

    The result has eigenvalues {e0, e1} with the prepared superposition
    as its ground state:

        h = |alpha|^2 e0 + |beta|^2 e1
        k = alpha conj(beta) (e0 - e1)
        l = |beta|^2 e0 + |alpha|^2 e1
    """
    w0, w1 = amps.weight0, amps.weight1
    e0, e1 = energies.e0, energies.e1
    h = w0 * e0 + w1 * e1
    k = amps.alpha * np.conj(amps.beta) * (e0 - e1)
    l = w1 * e0 + w0 * e1
    return TwoLevelHamiltonian(h, complex(k), l)


def vectorize(rho: DensityMatrix2) -> np.ndarray:
    """Flatten rho to the column (a, b, conj(b), d)."""
    return np.array([rho.a, rho.b, np.conj(rho.b), rho.d], dtype=complex)


def devectorize(psi: np.ndarray, positivity_tol: float = POSITIVITY_TOL) -> DensityMatrix2:
    """Rebuild a state from a 4-vector, checking it is physical.

    The conjugacy (psi[2] == conj(psi[1])), realness of psi[0]/psi[3],
    and unit-trace structure are gated at 1e-8; positivity is checked by
    the DensityMatrix2 constructor at ``positivity_tol``.

    Raises
    ------
    NonPhysical
        If the hermiticity or trace structure is violated beyond 1e-8.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise NonPhysical(f"expected a 4-vector, got shape {psi.shape}")
    conj_defect = abs(psi[2] - np.conj(psi[1]))
    if conj_defect > VECTOR_GATE_TOL:
        raise NonPhysical(f"conjugacy defect {conj_defect:.3e} beyond {VECTOR_GATE_TOL}")
    real_defect = max(abs(psi[0].imag), abs(psi[3].imag))
    if real_defect > VECTOR_GATE_TOL:
        raise NonPhysical(f"diagonal imaginary part {real_defect:.3e} beyond {VECTOR_GATE_TOL}")
    trace_defect = abs(psi[0] + psi[3] - 1.0)
    if trace_defect > VECTOR_GATE_TOL:
        raise NonPhysical(f"trace defect {trace_defect:.3e} beyond {VECTOR_GATE_TOL}")
    return DensityMatrix2(
        float(psi[0].real),
        complex(psi[1]),
        float(psi[3].real),
        trace_tol=VECTOR_GATE_TOL,
        positivity_tol=positivity_tol,
    )


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation scenario: system parameters plus a time grid.

    ``t_decoherence`` is an annotation only (the timescale after which
    coherence is taken to be gone); nothing is derived from it.
    """

    amps: SuperpositionAmplitudes
    energies: EnergyPair
    rates: LindbladRates
    t_measure: float
    t_max: float
    steps: int
    initial_state: DensityMatrix2 = field(default=KET0)
    t_decoherence: float | None = None

    def __post_init__(self):
        if not self.t_measure > 0.0:
            raise ValueError(f"t_measure must be positive, got {self.t_measure}")
        if not self.t_max > 0.0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")

    def time_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps + 1)
