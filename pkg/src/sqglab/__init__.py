"""sqglab: pseudo-spectral quasi-geostrophic solver and regularity diagnostics."""

from .config import RunConfig, load_config, parse_config
from .diagnostics import (
    BoundednessResult,
    DecayFit,
    NormSeries,
    check_boundedness,
    fit_decay_exponent,
    integral_tail_fraction,
    record_norms,
)
from .dynamics import (
    SolverConfig,
    SolverState,
    adapt_dt,
    initial_state,
    nonlinear_term,
    run_until,
    step,
)
from .errors import (
    AccuracyError,
    AsymmetryError,
    BlowUpError,
    BudgetError,
    ConfigError,
    ConstructionError,
    DomainError,
    InvalidFieldError,
    ParameterError,
    RangeError,
    SnapshotFormatError,
    SqgError,
)
from .initial import band_limited_random, make_initial
from .modulus import (
    BreachReport,
    GradientBoundReport,
    ModulusOfContinuity,
    ScalingResult,
    build_knv_modulus,
    check_modulus,
    default_offsets,
    find_scaling,
    gradient_bound_check,
    omega_prime_shape,
)
from .oracles import (
    OracleReport,
    convergence_ratio,
    convolution_nonlinearity,
    linear_heat_exact,
    scaling_consistency,
    single_mode_exact,
)
from .snapshot import Snapshot, read_snapshot, write_snapshot
from .spectral import (
    Grid,
    RealField,
    SpectralField,
    VelocityField,
    dealias,
    forward_transform,
    fractional_laplacian,
    gradient,
    gradient_sup,
    hermitian_asymmetry,
    inverse_transform,
    l2_norm,
    linf_norm,
    riesz_velocity,
    sobolev_norm,
)

__version__ = "0.1.0"
