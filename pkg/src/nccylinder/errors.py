"""Exception types shared across the package."""


class CylinderError(Exception):
    """Base class for all domain errors raised by this package."""


class HbarMismatchError(CylinderError):
    """Two elements with different deformation parameters were combined."""


class NotIntegrableError(CylinderError):
    """Quadrature was requested for a function with no declared decay."""


class ToleranceNotMetError(CylinderError):
    """Adaptive quadrature hit its depth limit above the error target."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NotTraceClassError(CylinderError):
    """The zero-mode coefficient is not integrable."""


class NonSmoothPointError(CylinderError):
    """A derivative was evaluated where the expression is not smooth."""


class DegenerateParamsError(CylinderError):
    """A parameter tuple violates the constraints it must satisfy."""


class RatioNotRationalError(CylinderError):
    """The two deformation parameters are not in the ratio r/r'."""


class SingularMetricError(CylinderError):
    """The metric determinant vanishes somewhere on the sampled domain."""


class NonConvergentError(CylinderError):
    """A limit extraction failed to stabilise."""


class ParseError(CylinderError):
    """Expression text could not be parsed."""

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}"
                         + (f" (expected {', '.join(expected)})" if expected else ""))
        self.position = position
        self.expected = tuple(expected)
