"""Exception hierarchy shared by every module of the package."""


class DebyeError(Exception):
    """Base class for all library errors."""


class DomainError(DebyeError, ValueError):
    """An argument lies outside the domain where the requested method is defined."""


class PoleError(DomainError):
    """A gamma function was requested at a non-positive integer."""


class BoundsError(DebyeError, ValueError):
    """A table lookup exceeded its configured bound."""


class SingularBandError(DomainError):
    """The Debye integrand has a pole inside the integration range (1 < alpha < e^X)."""


class ConvergenceError(DebyeError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance."""


class ContinuationResidualError(DebyeError, ArithmeticError):
    """Imaginary parts that should cancel after analytic continuation did not."""


class StructureError(DebyeError, ValueError):
    """A bracket series is malformed (e.g. more brackets than summation indices)."""


class DivergentTermError(DebyeError, ArithmeticError):
    """A series term is infinite (zero raised to a negative power, gamma pole)."""


class GammaPoleError(DivergentTermError, PoleError):
    """A series term needs Gamma at a non-positive integer."""
