"""bellkron: higher-order total derivatives of multivariate composites via
matrix-valued partial Bell polynomials and Kronecker-product calculus, applied
to exact moments of the multivariate normal distribution."""

from .partitions import (
    BellIndex,
    bell_coefficient,
    count_set_partitions,
    enumerate_bell_indices,
)
from .kron_ops import (
    PermOperator,
    SizeCapError,
    Symmetrizer,
    apply_perm_left,
    apply_perm_right,
    commutation_matrix,
    dense_materialize,
    kron,
    kron_chain,
    kron_power,
    identity_perm,
    shuffle_operator,
    symmetrize_matrix_columns,
    symmetrize_rows,
)
from .bell_poly import (
    Jet,
    base_polynomial,
    bell_dx_sandwich_rhs,
    bell_multivariate,
    bell_univariate,
    recurrence_check,
    sandwich_value,
)
from .matrix_calculus import (
    BlackBoxFn,
    PolyFn,
    exp_scalar_jet,
    finite_diff_jet,
    identity_poly,
    kron_chain_derivative,
    poly_jet,
)
from .faa_di_bruno import (
    CompositeDerivative,
    apply_differential,
    directional_taylor_check,
    faa_symmetrized,
    faa_total_derivative,
    faa_univariate,
    ray_derivative,
)
from .normal_moments import (
    GaussianSpec,
    MomentVector,
    central_even_moment,
    mgf,
    mgf_exponent_poly,
    moment_via_faa,
    raw_moment_vector,
    scalar_moment,
    symmetrized_moment_vector,
)
from .verification import (
    PairingPartition,
    compose_poly,
    isserlis_moment,
    iter_pairing_partitions,
    monte_carlo_moment,
)

__version__ = "0.1.0"

__all__ = [
    "BellIndex",
    "BlackBoxFn",
    "CompositeDerivative",
    "GaussianSpec",
    "Jet",
    "MomentVector",
    "PairingPartition",
    "PermOperator",
    "PolyFn",
    "SizeCapError",
    "Symmetrizer",
    "apply_differential",
    "apply_perm_left",
    "apply_perm_right",
    "base_polynomial",
    "bell_coefficient",
    "bell_dx_sandwich_rhs",
    "bell_multivariate",
    "bell_univariate",
    "central_even_moment",
    "commutation_matrix",
    "compose_poly",
    "count_set_partitions",
    "dense_materialize",
    "directional_taylor_check",
    "enumerate_bell_indices",
    "exp_scalar_jet",
    "faa_symmetrized",
    "faa_total_derivative",
    "faa_univariate",
    "finite_diff_jet",
    "identity_perm",
    "identity_poly",
    "isserlis_moment",
    "iter_pairing_partitions",
    "kron",
    "kron_chain",
    "kron_chain_derivative",
    "kron_power",
    "mgf",
    "mgf_exponent_poly",
    "moment_via_faa",
    "monte_carlo_moment",
    "poly_jet",
    "raw_moment_vector",
    "ray_derivative",
    "recurrence_check",
    "sandwich_value",
    "scalar_moment",
    "shuffle_operator",
    "symmetrize_matrix_columns",
    "symmetrize_rows",
    "symmetrized_moment_vector",
]
