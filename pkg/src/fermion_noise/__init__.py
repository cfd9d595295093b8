"""Noise stability of fermionic observables under qubit encodings.

Free-fermion states are carried as 2N x 2N Majorana covariance matrices,
fermion-to-qubit encodings as Pauli-weight models, and single-qubit Pauli
noise as an eigenvalue attenuation of each encoded bilinear.  On top of
that sit noisy free-fermion brickwork circuits, closed-form stability
bounds for power-law-correlated states, and a small dense oracle used by
the test suite to pin every sign convention.
"""

from .errors import ConfigError, InvariantViolation
from .lattice import (
    Lattice,
    MomentumGrid,
    momentum_grid,
    parity_of,
    snake_index,
    snake_index_vector,
    torus_distance,
)
from .encodings import (
    ENCODING_KINDS,
    EncodingWeightModel,
    StringComposition,
    bilinear_weight,
    bk_beta_matrix,
    bk_majorana_support,
    bk_max_number_operator_weight,
    bk_number_operator_weight,
    bk_number_operator_weight_from_beta,
    max_weight,
)
from .gaussian import (
    GaussianState,
    QuadraticObservable,
    circulant_power_law_state,
    correlation_from_mode_occupations,
    correlation_from_occupied,
    damped_random_state,
    decay_constant,
    fermi_sea,
    fermi_sea_1d,
    free_dispersion,
    momentum_occupation,
    occupied_modes,
    power_law_mask,
    random_pure_state,
    tight_binding_dispersion,
    tight_binding_ground_state_2d,
)
from .noise import (
    MODES,
    P_MAX,
    PauliChannel,
    attenuated_state,
    attenuation_matrix,
    measurement_error,
    momentum_error_map,
    noisy_expectation,
    pair_attenuation,
    sensitivity,
    site_attenuation_matrix,
)
from .circuits import (
    Circuit,
    LightConeReport,
    brickwork_circuit,
    circuit_error_curve,
    circuit_expectation,
    evolve_state,
    heisenberg_observable,
    lightcone_correlation_check,
)
from .bounds import (
    REGIME_LINEAR,
    REGIME_MARGINAL,
    REGIME_SUBLINEAR,
    REGIME_UNSTABLE,
    BoundReport,
    CircuitBound,
    DecayParams,
    bound_S,
    bound_S1,
    bound_S2,
    c_dim,
    decay_regime,
    fermi2d_limit_error,
    fermi2d_on_surface_error,
    jump_scaling_probe,
    l1_ball_site_count,
    lipschitz_scaling_probe,
    noise_factor,
    on_surface_integral,
    on_surface_integral_bound,
    polylog,
    prop1_bound,
    prop3_bound,
    prop4_bound,
    riemann_zeta,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "InvariantViolation",
    "Lattice",
    "MomentumGrid",
    "momentum_grid",
    "parity_of",
    "snake_index",
    "snake_index_vector",
    "torus_distance",
    "ENCODING_KINDS",
    "EncodingWeightModel",
    "StringComposition",
    "bilinear_weight",
    "bk_beta_matrix",
    "bk_majorana_support",
    "bk_max_number_operator_weight",
    "bk_number_operator_weight",
    "bk_number_operator_weight_from_beta",
    "max_weight",
    "GaussianState",
    "QuadraticObservable",
    "circulant_power_law_state",
    "correlation_from_mode_occupations",
    "correlation_from_occupied",
    "damped_random_state",
    "decay_constant",
    "fermi_sea",
    "fermi_sea_1d",
    "free_dispersion",
    "momentum_occupation",
    "occupied_modes",
    "power_law_mask",
    "random_pure_state",
    "tight_binding_dispersion",
    "tight_binding_ground_state_2d",
    "MODES",
    "P_MAX",
    "PauliChannel",
    "attenuated_state",
    "attenuation_matrix",
    "measurement_error",
    "momentum_error_map",
    "noisy_expectation",
    "pair_attenuation",
    "sensitivity",
    "site_attenuation_matrix",
    "Circuit",
    "LightConeReport",
    "brickwork_circuit",
    "circuit_error_curve",
    "circuit_expectation",
    "evolve_state",
    "heisenberg_observable",
    "lightcone_correlation_check",
    "REGIME_LINEAR",
    "REGIME_MARGINAL",
    "REGIME_SUBLINEAR",
    "REGIME_UNSTABLE",
    "BoundReport",
    "CircuitBound",
    "DecayParams",
    "bound_S",
    "bound_S1",
    "bound_S2",
    "c_dim",
    "decay_regime",
    "fermi2d_limit_error",
    "fermi2d_on_surface_error",
    "jump_scaling_probe",
    "l1_ball_site_count",
    "lipschitz_scaling_probe",
    "noise_factor",
    "on_surface_integral",
    "on_surface_integral_bound",
    "polylog",
    "prop1_bound",
    "prop3_bound",
    "prop4_bound",
    "riemann_zeta",
    "__version__",
]
