"""Batch statistics and Gaussian-approximation diagnostics."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats as sps

from ..errors import ParameterError
from ..moments import (EnsembleParams, induced_mean_T, induced_variance_T,
                       mean_entropy, variance_entropy)
from .mcmc import SampleBatch

MIN_SUMMARY_COUNT = 100


@dataclass(frozen=True)
class MomentReport:
    """Sample moments with standard errors and the KS distance of the
    standardized batch from a standard normal.  ks_statistic is None when
    the exact variance is degenerate (m = 1), in which case degenerate is
    set instead of raising."""

    count: int
    mean: float
    variance: float
    skewness: float
    se_mean: float
    se_variance: float
    ks_statistic: Optional[float]
    degenerate: bool = False


def exact_moments(batch_kind: str, p: EnsembleParams):
    """Exact (mean, variance) matching a batch kind."""
    if batch_kind == "constrained":
        return mean_entropy(p), variance_entropy(p)
    return induced_mean_T(p), induced_variance_T(p)


def skewness_se(count: int) -> float:
    """Standard error of the sample skewness under normality."""
    n = count
    return math.sqrt(6.0 * n * (n - 1.0) / ((n - 2.0) * (n + 1.0) * (n + 3.0)))


def summarize(batch: SampleBatch, p: Optional[EnsembleParams] = None) -> MomentReport:
    """Moment report of a batch; standardization uses the exact formulas."""
    p = p or batch.params
    v = np.asarray(batch.values, dtype=float)
    n = v.size
    if n < MIN_SUMMARY_COUNT:
        raise ParameterError(f"summarize needs at least {MIN_SUMMARY_COUNT} values")
    mean = float(v.mean())
    centered = v - mean
    m2 = float(np.mean(centered**2))
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    variance = m2 * n / (n - 1.0)
    skew = m3 / m2**1.5 if m2 > 0 else 0.0
    se_mean = math.sqrt(variance / n)
    se_variance = math.sqrt(max(m4 - m2 * m2 * (n - 3.0) / (n - 1.0), 0.0) / n)

    exact_mean, exact_var = exact_moments(batch.kind, p)
    if exact_var <= 0.0:
        return MomentReport(count=n, mean=mean, variance=variance, skewness=skew,
                            se_mean=se_mean, se_variance=se_variance,
                            ks_statistic=None, degenerate=True)
    z = (v - exact_mean) / math.sqrt(exact_var)
    ks = float(sps.kstest(z, "norm").statistic)
    return MomentReport(count=n, mean=mean, variance=variance, skewness=skew,
                        se_mean=se_mean, se_variance=se_variance,
                        ks_statistic=ks, degenerate=False)


def two_sample_ks(a: np.ndarray, b: np.ndarray):
    """Two-sample KS statistic and p-value."""
    res = sps.ks_2samp(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    return float(res.statistic), float(res.pvalue)
