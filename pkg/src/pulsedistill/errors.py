"""Exception types raised across the package.

Everything derives from PulseDistillError so callers can catch numerical
and physical-regime failures in one clause while letting genuine bugs
(TypeError and friends) propagate.
"""


class PulseDistillError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PulseDistillError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NotHermitianError(PulseDistillError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class DegeneratePulseError(PulseDistillError):
    """The pulse magnitude is zero where a finite splitting is required."""


class OffResonanceError(PulseDistillError):
    """The drive frequency does not match the closed-form resonance."""


class StepTooLargeError(PulseDistillError):
    """The integrator step fails the accuracy precondition."""


class ZeroProbabilityError(PulseDistillError):
    """A projection was requested onto an outcome of zero probability."""


class InvalidDensityError(PulseDistillError):
    """A matrix claimed to be a density operator fails its checks."""


class OutOfRegimeError(PulseDistillError, ValueError):
    """A protocol quantity was requested outside its regime of validity."""


class ConfigError(PulseDistillError):
    """A run configuration (file or flags) could not be parsed."""
