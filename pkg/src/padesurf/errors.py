"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; generic programming errors stay as built-ins.
"""


class PadesurfError(Exception):
    """Base class for all package-specific failures."""


class SingularMatrix(PadesurfError):
    """Rank deficiency detected during pivoted elimination."""


class NonConvergence(PadesurfError):
    """Iterative root refinement hit its iteration cap."""


class InsufficientCoefficients(PadesurfError):
    """Power series too short for the requested approximation order."""


class PrecisionExhausted(PadesurfError):
    """Escalated working precision hit its cap before the target accuracy."""


class OnCut(PadesurfError):
    """Evaluation point lies on the contour; use a trace variant instead."""


class QuadratureStall(PadesurfError):
    """Order doubling stopped improving the integral."""


class WeightDomainError(PadesurfError):
    """Weight has a zero or pole too close to the contour."""


class BuildInvariantViolated(PadesurfError):
    """A surface build-time invariant failed; the message names it."""


class PathCrossesCut(PadesurfError):
    """Internal routing assertion: a path segment hit a forbidden set."""


class ZeroCountMismatch(PadesurfError):
    """Divisor search located a number of zeros different from the genus."""


class TooCloseToChain(PadesurfError):
    """Cauchy-kernel evaluation point is below quadrature resolution."""


class DivisorOnEvaluationPoint(PadesurfError):
    """Theta quotient was requested at (or too near) a zero/pole."""


class GammaUnstable(PadesurfError):
    """Richardson extrapolation for a leading coefficient did not settle."""


class ExcludedPoint(PadesurfError):
    """Evaluation point violates the divisor exclusion radius."""


class ConfigError(PadesurfError):
    """Experiment configuration failed schema validation."""
