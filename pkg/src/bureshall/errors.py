"""Exception hierarchy shared across the toolkit."""


class BuresHallError(Exception):
    """Base class for all toolkit errors."""


class DomainError(BuresHallError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ParameterError(BuresHallError, ValueError):
    """Invalid or inconsistent ensemble parameters."""


class InputError(BuresHallError, ValueError):
    """Data value violating a documented invariant."""


class SingularParameterError(ParameterError):
    """Parameters that land on (or too close to) a prefactor singularity."""


class ConstructionError(BuresHallError, RuntimeError):
    """A self-check failed while building a derived object."""


class QuadratureError(BuresHallError, RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""


class TuningError(BuresHallError, RuntimeError):
    """Sampler auto-tuning failed to reach a usable acceptance rate."""
