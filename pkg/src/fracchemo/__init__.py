"""Fractional attraction-repulsion chemotaxis with generalized logistic growth.

A pseudo-spectral solver for the coupled concentration/signal system with
fractional diffusion, plus the analysis toolkit around it: comparison
constants and scalar ODE oracles, regime classification, fractional heat
kernel evaluation, front-speed measurement, restricted Dirichlet
eigenproblems, and an experiment harness with a CLI.
"""

from .comparison import (
    BALANCE_RTOL,
    bound_C0,
    bracket_fixed_point,
    bracket_ode_limits,
    constant_H,
    constant_M,
    constant_M1,
    Constants,
    equilibrium,
    homogeneous_ode,
    imbalance_branches,
    is_balanced,
    logistic_closed_form,
    lower_ode,
    ODETrajectory,
    summarize_constants,
)
from .dynamics import (
    BLOW_UP_THRESHOLD,
    drift_velocity,
    dt_stability,
    elliptic_update,
    floored_power,
    homogeneous_step_oracle,
    MAX_HALVINGS,
    rhs_explicit,
    RunRecord,
    simulate,
    State,
    step_imex,
    StepDiagnostics,
    StepperConfig,
)
from .eigen import (
    apply_to_one,
    assemble_restricted,
    DirichletOperator,
    drifted_principal_eigen,
    eigenvalue_gap,
    principal_eigenpair,
    rayleigh_quotient,
    singular_kernel_constant,
)
from .errors import (
    BlowUpError,
    ConfigError,
    ConvergenceError,
    CorruptedFieldError,
    FracchemoError,
    GeometryError,
    GridMismatchError,
    InsufficientDataError,
    KernelClipWarning,
    OracleError,
    ParameterError,
    PositivityError,
    QuadratureError,
    RegimeViolationWarning,
    ResolutionWarning,
    SingularityError,
    TruncatedWindowWarning,
    TruncationError,
)
from .harness import (
    build_initial,
    CheckResult,
    CONFIG_MAGIC,
    derive_config,
    ExperimentConfig,
    InitialSpec,
    load_config,
    parse_config,
    run_suite,
    sweep,
)
from .kernels import (
    heat_kernel_value,
    kato_limit_check,
    kato_quantity,
    KatoTable,
    kernel_mass,
    kernel_tail_estimate,
    KernelSpec,
    semigroup_defect,
    tabulate_kernel,
)
from .params import Params
from .regime import (
    AsymptoticsFragment,
    BoundednessFragment,
    Check,
    RegimeVerdict,
    asymptotic_checks,
    boundedness_checks,
    classify,
    classify_asymptotics,
    classify_boundedness,
    predicted_speed_bounds,
    table_row,
    table_threshold,
    threshold_from_M,
)
from .spectral import (
    constant_field,
    dealias,
    divergence,
    Field,
    forward_transform,
    fractional_laplacian,
    gradient,
    Grid,
    helmholtz_residual,
    helmholtz_solve,
    inverse_transform,
    laplacian,
    read_snapshot,
    SNAPSHOT_MAGIC,
    spectral_tail_fraction,
    write_snapshot,
)
from .spreading import (
    check_inner_persistence,
    check_outer_decay,
    ConeReport,
    fit_front,
    fit_rate,
    FrontTrace,
    level_radius,
    make_bump_initial,
    make_x0_initial,
    RateFit,
)

__version__ = "0.1.0"

__all__ = [
    "apply_to_one",
    "assemble_restricted",
    "asymptotic_checks",
    "AsymptoticsFragment",
    "BALANCE_RTOL",
    "BLOW_UP_THRESHOLD",
    "BlowUpError",
    "bound_C0",
    "boundedness_checks",
    "BoundednessFragment",
    "bracket_fixed_point",
    "bracket_ode_limits",
    "build_initial",
    "Check",
    "check_inner_persistence",
    "check_outer_decay",
    "CheckResult",
    "classify",
    "classify_asymptotics",
    "classify_boundedness",
    "ConeReport",
    "CONFIG_MAGIC",
    "ConfigError",
    "constant_field",
    "constant_H",
    "constant_M",
    "constant_M1",
    "Constants",
    "ConvergenceError",
    "CorruptedFieldError",
    "dealias",
    "derive_config",
    "DirichletOperator",
    "divergence",
    "drift_velocity",
    "drifted_principal_eigen",
    "dt_stability",
    "eigenvalue_gap",
    "elliptic_update",
    "equilibrium",
    "ExperimentConfig",
    "Field",
    "fit_front",
    "fit_rate",
    "floored_power",
    "forward_transform",
    "FracchemoError",
    "fractional_laplacian",
    "FrontTrace",
    "GeometryError",
    "gradient",
    "Grid",
    "GridMismatchError",
    "heat_kernel_value",
    "helmholtz_residual",
    "helmholtz_solve",
    "homogeneous_ode",
    "homogeneous_step_oracle",
    "imbalance_branches",
    "InitialSpec",
    "InsufficientDataError",
    "inverse_transform",
    "is_balanced",
    "kato_limit_check",
    "kato_quantity",
    "KatoTable",
    "kernel_mass",
    "kernel_tail_estimate",
    "KernelClipWarning",
    "KernelSpec",
    "laplacian",
    "level_radius",
    "load_config",
    "logistic_closed_form",
    "lower_ode",
    "make_bump_initial",
    "make_x0_initial",
    "MAX_HALVINGS",
    "ODETrajectory",
    "OracleError",
    "ParameterError",
    "Params",
    "parse_config",
    "PositivityError",
    "predicted_speed_bounds",
    "principal_eigenpair",
    "QuadratureError",
    "RateFit",
    "rayleigh_quotient",
    "read_snapshot",
    "RegimeVerdict",
    "RegimeViolationWarning",
    "ResolutionWarning",
    "rhs_explicit",
    "run_suite",
    "RunRecord",
    "semigroup_defect",
    "simulate",
    "singular_kernel_constant",
    "SingularityError",
    "SNAPSHOT_MAGIC",
    "spectral_tail_fraction",
    "State",
    "step_imex",
    "StepDiagnostics",
    "StepperConfig",
    "summarize_constants",
    "sweep",
    "table_row",
    "table_threshold",
    "tabulate_kernel",
    "threshold_from_M",
    "TruncatedWindowWarning",
    "TruncationError",
    "write_snapshot",
]
