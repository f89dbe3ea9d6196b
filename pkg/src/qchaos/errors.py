"""Exception and warning hierarchy shared across the package."""


class QchaosError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QchaosError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnboundOrbitError(QchaosError, ValueError):
    """The requested energy does not correspond to a bound orbit."""


class NoBoundOrbitError(UnboundOrbitError):
    """Radial cubic has complex roots: no bound orbit at this (E, L)."""

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class RangeError(QchaosError, ValueError):
    """A value lies outside the validity range of a chart or table."""


class NumericError(QchaosError, RuntimeError):
    """A numerical procedure failed to reach its target tolerance."""

    def __init__(self, message, achieved_tolerance=None):
        super().__init__(message)
        self.achieved_tolerance = achieved_tolerance


class NoResonanceError(QchaosError, ValueError):
    """No resonance pair brackets the requested action."""


class DegenerateResonanceError(QchaosError, ValueError):
    """The frequency derivative vanishes at the resonance location."""


class SingularFormulaError(QchaosError, ValueError):
    """A closed-form expression is singular at the requested arguments."""


class InsufficientDataError(QchaosError, ValueError):
    """Not enough samples to compute the requested statistic."""


class ConfigError(QchaosError, ValueError):
    """Invalid configuration input (CLI / service boundary)."""


class RegimeWarning(UserWarning):
    """An asymptotic formula is being evaluated outside its validity regime."""


class ResolutionWarning(UserWarning):
    """A truncated series or grid did not reach the requested resolution."""
