"""Exception types raised across the package.

Every numerical failure mode has its own class so callers (and the CLI exit-code
mapping) can tell a bad argument from a genuine breakdown.
"""


class LandscapeLawError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(LandscapeLawError, ValueError):
    """An argument violates a documented precondition."""


class SizeLimitError(LandscapeLawError):
    """A dense operation was requested above the configured site cap."""


class SingularSystemError(LandscapeLawError):
    """The landscape system has no unique solution (identically zero potential)."""


class ConvergenceFailureError(LandscapeLawError):
    """An iterative solver exhausted its iteration budget.

    Carries the residual that was actually achieved.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class FactorizationError(LandscapeLawError):
    """Pivot breakdown that survived all shift-perturbation retries.

    Carries the offending energy.
    """

    def __init__(self, message, energy=None):
        super().__init__(message)
        self.energy = energy


class OutOfRangeError(LandscapeLawError):
    """An evaluation point lies outside the curve's energy grid."""


class UndefinedRegionError(LandscapeLawError):
    """Log-log interpolation was asked to bracket a zero count."""


class WindowTooWideError(LandscapeLawError):
    """A fit window demands values outside the curve's usable range."""


class InsufficientDataError(LandscapeLawError):
    """Too few usable points remain for a fit."""


class ScalingRegimeError(LandscapeLawError):
    """Fitted intercepts violate the low-energy scaling assumptions."""


class EnsembleError(LandscapeLawError):
    """A realization inside an ensemble run failed.

    Carries the realization index; the underlying error is chained.
    """

    def __init__(self, message, realization=None):
        super().__init__(message)
        self.realization = realization


class ConfigError(LandscapeLawError):
    """A run configuration could not be parsed or validated.

    Carries the offending line number when it came from a file.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
