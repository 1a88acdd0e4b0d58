"""
Exception hierarchy for the Fisher-Hartwig Toeplitz toolkit.

Every error raised by the numerical packages derives from FisherHartwigError so
the run coordinator can map a whole family to one exit status.
"""


class FisherHartwigError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(FisherHartwigError):
    """A run configuration or symbol file could not be accepted."""


# symbol validation and evaluation

class SymbolError(FisherHartwigError):
    pass


class IntegrabilityViolation(SymbolError):
    """Some Re(alpha_j) <= -1/2, so the symbol is not integrable."""


class OrderingViolation(SymbolError):
    """Singular angles are not strictly increasing from theta_0 = 0 inside [0, 2*pi)."""


class EmptySingularity(SymbolError):
    """A record with index j >= 1 has alpha_j = beta_j = 0."""


class EvaluationAtSingularity(SymbolError):
    """The symbol was evaluated exactly at a singular angle."""


class NotAJumpOnlySingularity(SymbolError):
    """The jump of f was requested at a point carrying a root singularity."""


# special functions

class SpecialFunctionError(FisherHartwigError):
    pass


class PoleError(SpecialFunctionError):
    """log-Gamma requested at a non-positive integer."""


# numerical failures

class ToleranceNotMet(FisherHartwigError):
    """A quadrature error estimate exceeds the requested tolerance."""

    def __init__(self, message: str, worst_error: float = float("nan")):
        super().__init__(message)
        self.worst_error = worst_error


class NumericalBreakdown(FisherHartwigError):
    """A principal minor vanished (or nearly so) along the way."""

    def __init__(self, message: str, breakdown_at: int | None = None):
        super().__init__(message)
        self.breakdown_at = breakdown_at


class SingularMinor(NumericalBreakdown):
    pass


class RecursionBreakdown(NumericalBreakdown):
    pass


class MinorBreakdown(NumericalBreakdown):
    pass


class DeformationVanishes(NumericalBreakdown):
    """1 - t + t*exp(V) vanishes (numerically) somewhere on the circle."""


# preconditions of individual operations

class PreconditionViolated(FisherHartwigError):
    pass


class RegularizationRequired(PreconditionViolated):
    """The Cauchy transform at z_j needs the regularized integral (Re alpha_j <= 0)."""


class DegenerateParameters(FisherHartwigError):
    """alpha +- beta is a negative integer, so a G-function factor vanishes."""


class OutOfValidity(FisherHartwigError):
    """The asymptotic formula is evaluated outside |||beta||| < 1 or at a degenerate point."""


class InsufficientData(FisherHartwigError):
    pass
