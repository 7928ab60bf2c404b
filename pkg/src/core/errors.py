"""
Exception hierarchy
Every error raised by the library derives from EvanescentError
"""
from typing import Optional


class EvanescentError(Exception):
    """Base class for library errors"""


class DomainError(EvanescentError, ValueError):
    """Input outside the domain of an operation"""


class OmegaNotEvanescent(DomainError):
    """Frequency not strictly inside (0, omega_c)"""


class LightlikeUnparametrizable(DomainError):
    """A lightlike interval has no rest or simultaneity frame"""


class LightconeSingular(DomainError):
    """Closed forms are not evaluated on the light cone"""


class FrameRequired(DomainError):
    """Frame-reduced closed forms need t == 0 or r == 0"""


class OrderUnsupported(DomainError):
    """Bessel order outside {0, 1, 2}"""


class RayUnsupported(DomainError):
    """Complex argument off the positive real axis and the ray z = -ix"""


class ArgumentTooSmall(DomainError):
    """Asymptotic form requested below its validity threshold"""


class QuadratureFailure(EvanescentError):
    """Adaptive integration did not meet its tolerance"""

    def __init__(self, message: str, best_estimate: complex = complex("nan"), error_estimate: float = float("nan")):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class TailNotDecaying(QuadratureFailure):
    """Semi-infinite integrand tail did not fall below the truncation tolerance"""


class StepTooSmall(EvanescentError):
    """Roundoff dominates a finite-difference stencil"""


class InsufficientData(EvanescentError):
    """Not enough samples for a fit or comparison"""


class NonPositiveModulus(EvanescentError):
    """Log-linear fits need strictly positive moduli"""


class NoOscillationDetected(EvanescentError):
    """Fewer than four zero crossings in the sampled window"""


class EvaluationError(EvanescentError):
    """An evaluator failed at a specific grid point"""

    def __init__(self, t: float, r: float, cause: Exception):
        super().__init__(f"evaluation failed at (t={t!r}, r={r!r}): {type(cause).__name__}: {cause}")
        self.t = t
        self.r = r
        self.cause = cause


class ConfigError(EvanescentError):
    """Invalid configuration value or malformed config line"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        where = []
        if field:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line
