"""Exception hierarchy shared by all modules."""


class StefanError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StefanError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(StefanError, RuntimeError):
    """An iterative procedure failed to reach its tolerance."""


class AdmissibilityError(StefanError, ValueError):
    """Initial data violates the standing assumptions on (u0, b0)."""


class StateError(StefanError, ValueError):
    """A similarity or physical state violates its invariants."""


class ConfigError(StefanError, ValueError):
    """Invalid solver or run configuration."""


class SolverBreakdownError(StefanError, RuntimeError):
    """Non-positive pivot in the tridiagonal solve."""


class FrontCollapseError(StefanError, RuntimeError):
    """The front position became non-positive during a step."""


class UsageError(StefanError, ValueError):
    """Inputs to a diagnostic are mutually inconsistent."""
