"""decolab: driven two-level Lindblad decoherence, solved in closed form.

The package assembles the 4x4 generator W of the vectorized master
equation, evolves states by factor product / brute force / spectral
decomposition, diagonalizes W through its characteristic cubic, and
computes both long-time endpoints: the Born-weight diagonal limit of
the factor product and the exact zero-mode limit of the full dynamics.
"""

from .asymptotics import (
    AsymptoticReport,
    born_rates,
    limit_matrix_from_cofactors,
    stationary_approx,
    stationary_exact,
)
from .core_types import (
    KET0,
    KET1,
    PLUS,
    DensityMatrix2,
    EnergyPair,
    LindbladRates,
    ScenarioConfig,
    SuperpositionAmplitudes,
    TwoLevelHamiltonian,
    devectorize,
    dressed_hamiltonian,
    dressing_unitary,
    make_amplitudes,
    pure_state,
    vectorize,
)
from .errors import (
    BracketFailure,
    DecolabError,
    DegenerateAmplitude,
    DegenerateCase,
    DegenerateSpectrum,
    DimensionMismatch,
    NonPhysical,
    NotNormalized,
    OverflowGuard,
    ZeroVector,
)
from .propagators import (
    CijCoefficients,
    PropagatorMethod,
    approx_propagator,
    cij,
    evolve,
    evolve_grid,
    exact_propagator_oracle,
    exp_d_hat,
    exp_h_hat,
    inf_norm,
    matrix_exp,
    propagator_factory,
    spectral_propagator,
)
from .spectral import (
    CubicCoefficients,
    WSpectrum,
    bracketed_roots,
    characteristic_cubic,
    characteristic_cubic_from_hamiltonian,
    equal_weight_roots,
    solve_cubic,
    w_spectrum,
)
from .superoperator import (
    IDENTITY2,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    SIGMA_MINUS,
    SIGMA_PLUS,
    build_d_hat,
    build_h_hat,
    build_h_hat_explicit,
    build_w,
    dissipator_apply,
    kron,
)
from .zassenhaus import OrderCheckResult, commutator, order_check, zassenhaus_product

__version__ = "0.1.0"
