"""Exception types raised across the package."""


class SizeError(ValueError):
    """Requested problem size is outside the supported range."""


class DimensionError(ValueError):
    """Objects of incompatible qubit counts were combined."""


class ParameterError(ValueError):
    """A parameter violates its documented constraints."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class NormalizationError(ValueError):
    """A state vector is not normalized closely enough to be measured."""


class ConvergenceError(RuntimeError):
    """The propagator failed to reach the requested accuracy.

    ``residual`` carries the last error estimate.
    """

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual estimate {residual:.3e})")
        self.residual = residual
