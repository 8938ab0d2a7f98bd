"""Exception hierarchy shared by all opialkit modules."""


class OpialKitError(Exception):
    """Base class for every error raised by opialkit."""


class SpecParseError(OpialKitError, ValueError):
    """A function, basis or manifest spec string is malformed."""


class DomainError(OpialKitError, ValueError):
    """A point, stencil or power lies outside its admissible domain."""


class EvaluationError(OpialKitError, ArithmeticError):
    """A function or integrand produced a non-finite value."""


class SingularWronskianError(OpialKitError, ArithmeticError):
    """A Wronskian denominator fell below its floor."""


class WidderHypothesisError(OpialKitError, ValueError):
    """A basis family fails positivity of its Wronskians on the grid."""


class KernelNegativityError(OpialKitError, ValueError):
    """A kernel that must be nonnegative took a negative value."""


class WeightError(OpialKitError, ValueError):
    """A weight function violates its sign or floor requirement."""


class ExponentDegeneracyError(OpialKitError, ValueError):
    """Exponents make a constant undefined (alpha + beta = 0, r = alpha, r = 1)."""


class DegenerateIntegrandError(OpialKitError, ValueError):
    """A quantity raised to a negative power gets too close to zero."""


class RegimeError(OpialKitError, ValueError):
    """Exponents do not belong to the regime a theorem requires."""


class GenerationError(OpialKitError, RuntimeError):
    """Random instance generation failed repeatedly."""
