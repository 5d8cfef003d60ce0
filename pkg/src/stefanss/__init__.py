"""Self-similar asymptotics of the one-phase Stefan problem with decaying Neumann flux."""
from ._kernels import DEFAULT_BACKEND
from .bounds import (
    InitialData,
    StationaryPerturbed,
    UpperLinear,
    build_upper,
    choose_lambda,
    perturbed_slope,
    perturbed_value,
    solve_b_lambda,
)
from .diagnostics import (
    ConvergenceReport,
    Violation,
    check_monotone_in_time,
    check_ordering,
    convergence_report,
    energy_bound,
    energy_window,
    extend_by_zero,
    sup_distance,
)
from .errors import (
    AdmissibilityError,
    ConfigError,
    ConvergenceError,
    DomainError,
    FrontCollapseError,
    SolverBreakdownError,
    StateError,
    StefanError,
    UsageError,
)
from .similarity import (
    SelfSimilarProfile,
    physical_self_similar,
    profile_slope,
    profile_value,
    solve_omega,
)
from .solver import (
    SimilarityState,
    SolverConfig,
    Trajectory,
    front_fixed_coefficients,
    run,
    stefan_velocity,
    step,
)
from .transforms import PhysicalState, to_physical, to_similarity

__version__ = "0.1.0"
