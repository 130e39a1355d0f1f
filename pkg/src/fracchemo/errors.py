"""Exception and warning types shared across the package."""

from __future__ import annotations


class FracchemoError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(FracchemoError, ValueError):
    """A scalar argument or coefficient is outside its admissible range."""


class CorruptedFieldError(FracchemoError, ValueError):
    """A field contains non-finite entries or a snapshot file is malformed."""


class GridMismatchError(FracchemoError, ValueError):
    """Two fields that must share a grid do not."""


class GeometryError(FracchemoError, ValueError):
    """A requested shape does not fit inside the computational box."""


class PositivityError(FracchemoError, ValueError):
    """A concentration field is negative beyond the allowed tolerance."""


class QuadratureError(FracchemoError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class TruncationError(FracchemoError, ValueError):
    """A truncation radius is too small for the requested tolerance."""


class SingularityError(FracchemoError, ValueError):
    """A singular integral diverges for the given exponent."""


class BlowUpError(FracchemoError, RuntimeError):
    """The solution exceeded the blow-up threshold or produced NaN.

    Carries the time of the event and the last valid state so a caller can
    record the truncated trajectory instead of losing the run.
    """

    def __init__(self, message: str, time: float, last_state=None):
        super().__init__(message)
        self.time = time
        self.last_state = last_state


class OracleError(FracchemoError, RuntimeError):
    """An ODE oracle violated a property it is guaranteed to satisfy."""


class ConvergenceError(FracchemoError, RuntimeError):
    """An iterative solver did not converge within its budget."""


class InsufficientDataError(FracchemoError, ValueError):
    """Not enough valid samples to perform a statistical fit."""


class ConfigError(FracchemoError, ValueError):
    """An experiment configuration file is invalid."""


class ResolutionWarning(UserWarning):
    """Spectral tail energy suggests the grid is under-resolved."""


class TruncatedWindowWarning(UserWarning):
    """A fit window was shortened to respect a validity guard."""


class KernelClipWarning(UserWarning):
    """A kernel value slightly below zero was clipped to zero."""


class RegimeViolationWarning(UserWarning):
    """A trajectory left the envelope predicted by its classified regime."""
