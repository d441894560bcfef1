"""Monte Carlo layer: two independent sampling routes plus batch diagnostics."""

from ._backend import backend_name, compiled_available
from .matrix import sample_matrix_model
from .mcmc import (McmcConfig, SampleBatch, sample_unconstrained, split_rhat,
                   to_constrained)
from .stats import MomentReport, exact_moments, skewness_se, summarize, two_sample_ks

__all__ = [
    "McmcConfig", "MomentReport", "SampleBatch",
    "backend_name", "compiled_available", "exact_moments",
    "sample_matrix_model", "sample_unconstrained", "skewness_se",
    "split_rhat", "summarize", "to_constrained", "two_sample_ks",
]
