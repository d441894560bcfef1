"""Exact moments of von Neumann entropy over the Bures-Hall ensemble.

Layered so that every result is checkable against the layer below it:
closed-form moments (`moments`, `closedforms`) against kernel quadrature
(`kernels`) against Monte Carlo (`sampler`), with the summation identities
the derivation consumes verified on their own (`identities`).
"""

__version__ = "0.1.0"

from . import closedforms, identities, kernels, moments, sampler, specfun
from .errors import (BuresHallError, ConstructionError, DomainError, InputError,
                     ParameterError, QuadratureError, SingularParameterError,
                     TuningError)
from .moments import EnsembleParams, params_from_alpha, params_from_dims

__all__ = [
    "BuresHallError", "ConstructionError", "DomainError", "EnsembleParams",
    "InputError", "ParameterError", "QuadratureError", "SingularParameterError",
    "TuningError", "__version__", "closedforms", "identities", "kernels",
    "moments", "params_from_alpha", "params_from_dims", "sampler", "specfun",
]
