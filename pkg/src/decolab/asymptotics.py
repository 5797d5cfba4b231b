"""Long-time endpoints of the dynamics.

Two different infinities live here:

* the factor-product ("measurement") limit, which is diagonal with
  populations (nu, mu)/(mu+nu) regardless of the initial state, and
  reproduces Born-rule statistics when the rates are chosen as
  nu = s |alpha|^2, mu = s |beta|^2;
* the exact limit of exp(t W), the zero mode of W, which generally
  retains coherence and is likewise independent of the initial state,
  but does not match the Born endpoint.

The exact limit is computed as a numeric projector onto the zero mode;
the closed cofactor form of the same projector is exposed separately as
a diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_types import (
    DensityMatrix2,
    EnergyPair,
    LindbladRates,
    SuperpositionAmplitudes,
    VECTOR_GATE_TOL,
    devectorize,
    dressed_hamiltonian,
    vectorize,
)
from .errors import DegenerateAmplitude, DegenerateSpectrum
from .propagators import PropagatorMethod, exact_propagator_oracle, inf_norm
from .spectral import PIVOT_FACTOR, WSpectrum, _null_vector, w_spectrum
from .superoperator import build_w

#: Amplitude magnitudes below this would force a zero rate.
AMPLITUDE_FLOOR = 1e-12

#: |alpha| = |beta| within this margin is the degenerate (equal-weight)
#: regime where the unique-limit contract is refused.
WEIGHT_SPLIT_TOL = 1e-12

#: Positivity slack allowed in a reported limit state.
LIMIT_POSITIVITY_TOL = 1e-9

BORN_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticReport:
    """A limit state plus the evidence that the dynamics reaches it."""

    rho_limit: DensityMatrix2
    method: PropagatorMethod
    residual: float
    born_weights: tuple[float, float] | None = None

    def __post_init__(self):
        if self.born_weights is not None:
            p0, p1 = self.born_weights
            if abs(p0 + p1 - 1.0) > BORN_WEIGHT_TOL:
                raise ValueError(f"born weights sum to {p0 + p1!r}, not 1")


def stationary_approx(rates: LindbladRates, rho0: DensityMatrix2) -> DensityMatrix2:
    """Long-time state of the factor product: diag(nu, mu)/(mu+nu).

    Depends on rho0 only through its trace, i.e. not at all for a valid
    state; the argument is kept to make that independence testable.
    """
    trace = rho0.a + rho0.d
    s = rates.total
    return DensityMatrix2(
        rates.nu * trace / s,
        0.0j,
        rates.mu * trace / s,
        trace_tol=VECTOR_GATE_TOL,
    )


def born_rates(amps: SuperpositionAmplitudes, scale: float) -> LindbladRates:
    """Rates whose factor-product limit reproduces Born statistics.

    nu = scale |alpha|^2 and mu = scale |beta|^2, so the limit state is
    diag(|alpha|^2, |beta|^2) for every scale > 0 (only the ratio
    matters; scale sets how fast the limit is approached).

    Raises
    ------
    DegenerateAmplitude
        If |alpha| or |beta| is below 1e-12 (a rate would vanish).
    """
    if not scale > 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    if min(abs(amps.alpha), abs(amps.beta)) < AMPLITUDE_FLOOR:
        raise DegenerateAmplitude(
            "both amplitudes must be nonzero to define positive rates"
        )
    return LindbladRates(mu=scale * amps.weight1, nu=scale * amps.weight0)


def limit_matrix_from_cofactors(spectrum: WSpectrum) -> np.ndarray:
    """Closed-form infinite-time projector built from eigenvector cofactors.

    Columns 1 and 4 both equal cofactors_row1 / det(O); columns 2 and 3
    vanish.  With the zero-mode column of O scaled to (1, 0, 0, 1) this
    is automatically trace-correct, because the first row of inv(O)
    contracted with that column is exactly 1.  Kept as a diagnostic; the
    production limit path is the numeric zero-mode projector.
    """
    column = spectrum.cofactors_row1 / spectrum.o_det
    out = np.zeros((4, 4), dtype=complex)
    out[:, 0] = column
    out[:, 3] = column
    return out


def stationary_exact(
    amps: SuperpositionAmplitudes,
    energies: EnergyPair,
    rates: LindbladRates,
    rho0: DensityMatrix2,
) -> AsymptoticReport:
    """Exact t -> infinity state: the trace-one zero mode of W.

    The limit is the same for every initial state (the zero mode is
    unique away from the equal-weight degeneracy), so in particular the
    |0><0| and |1><1| preparations converge to one and the same state.
    The report's residual field records how far the brute-force
    propagator still is from the limit at probe time
    T = 60 / min|Re lambda|, where every decaying mode is below e^-60.

    Raises
    ------
    DegenerateSpectrum
        For equal superposition weights (within 1e-12) or a
        near-degenerate eigenvalue configuration.
    """
    if abs(abs(amps.alpha) - abs(amps.beta)) < WEIGHT_SPLIT_TOL:
        raise DegenerateSpectrum(
            "equal superposition weights: the closed-form limit is refused; "
            "probe the dynamics with the oracle propagator instead"
        )
    spectrum = w_spectrum(amps, energies, rates)
    w = build_w(dressed_hamiltonian(amps, energies), rates)
    zero_mode = _null_vector(w, PIVOT_FACTOR * inf_norm(w))
    mode_trace = zero_mode[0] + zero_mode[3]
    if abs(mode_trace) < 1e-12:
        raise DegenerateSpectrum("zero mode is traceless; no stationary state")
    psi_limit = zero_mode * ((rho0.a + rho0.d) / mode_trace)
    rho_limit = devectorize(psi_limit, positivity_tol=LIMIT_POSITIVITY_TOL)
    t_probe = 60.0 / spectrum.min_decay_rate()
    psi_probe = exact_propagator_oracle(t_probe, w) @ vectorize(rho0)
    residual = float(np.max(np.abs(psi_probe - psi_limit)))
    return AsymptoticReport(
        rho_limit=rho_limit,
        method=PropagatorMethod.EXACT_SPECTRAL,
        residual=residual,
    )
