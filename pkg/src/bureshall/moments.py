"""Ensemble parameters and the exact entropy-moment formulas.

Eigenvalue densities handled here:

    constrained   f(l) ~ delta(1 - sum l_i) prod_{i<j} (l_i-l_j)^2/(l_i+l_j) prod l_i^a
    unconstrained h(x) ~ prod_{i<j} (x_i-x_j)^2/(x_i+x_j) prod x_i^a e^{-x_i}

with a = n - m - 1/2 in the physical (m, n) parameterization and any a > -1
otherwise.  The trace theta = sum x_i of the unconstrained ensemble is
Gamma(d, 1) distributed with d = m(m + 2a + 1)/2 and is independent of the
normalized spectrum, which is what ties the two ensembles' moments together.

All Gamma-laden normalization constants are kept in log space; the constant
itself overflows double precision already at modest m.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, InputError, ParameterError
from .specfun import digamma, log_gamma, trigamma

SPECTRUM_SUM_TOL = 1e-12


@dataclass(frozen=True)
class EnsembleParams:
    """Dimensions and derived constants of one ensemble instance.

    n is present only for the physical parameterization; the entropy-moment
    formulas require it, the induced (trace-side) formulas do not.
    """

    m: int
    alpha: float
    n: Optional[int]
    d: float
    log_c: float
    log_c_prime: float

    @property
    def physical(self) -> bool:
        return self.n is not None


def _log_c(m: int, alpha: float) -> float:
    d = 0.5 * m * (m + 2.0 * alpha + 1.0)
    terms = [
        -m * (m + 2.0 * alpha) * math.log(2.0),
        0.5 * m * math.log(math.pi),
        -log_gamma(d),
    ]
    for i in range(1, m + 1):
        terms.append(log_gamma(i + 1.0))
        terms.append(log_gamma(i + 2.0 * alpha + 1.0))
        terms.append(-log_gamma(i + alpha + 0.5))
    return math.fsum(terms)


def params_from_dims(m: int, n: int) -> EnsembleParams:
    """Physical parameterization: subsystem dimensions m <= n."""
    if not (isinstance(m, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise ParameterError("m and n must be integers")
    m, n = int(m), int(n)
    if m < 1 or n < m:
        raise ParameterError(f"require 1 <= m <= n, got m={m}, n={n}")
    alpha = n - m - 0.5
    d = 0.5 * m * (m + 2.0 * alpha + 1.0)
    lc = _log_c(m, alpha)
    return EnsembleParams(m=m, alpha=alpha, n=n, d=d, log_c=lc,
                          log_c_prime=lc + log_gamma(d))


def params_from_alpha(m: int, alpha: float) -> EnsembleParams:
    """General parameterization: any alpha > -1 (n left absent)."""
    if not isinstance(m, (int, np.integer)) or int(m) < 1:
        raise ParameterError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    alpha = float(alpha)
    if not alpha > -1.0:
        raise ParameterError(f"alpha must exceed -1, got {alpha}")
    d = 0.5 * m * (m + 2.0 * alpha + 1.0)
    lc = _log_c(m, alpha)
    return EnsembleParams(m=m, alpha=alpha, n=None, d=d, log_c=lc,
                          log_c_prime=lc + log_gamma(d))


def _require_physical(p: EnsembleParams, what: str) -> int:
    if p.n is None:
        raise ParameterError(f"{what} needs the physical (m, n) parameterization")
    return p.n


def mean_entropy(p: EnsembleParams) -> float:
    """Exact mean of the von Neumann entropy, psi0(mn - m^2/2 + 1) - psi0(n + 1/2)."""
    n = _require_physical(p, "mean_entropy")
    m = p.m
    return digamma(m * n - 0.5 * m * m + 1.0) - digamma(n + 0.5)


def variance_entropy(p: EnsembleParams) -> float:
    """Exact variance of the von Neumann entropy."""
    n = _require_physical(p, "variance_entropy")
    m = p.m
    coeff = (2.0 * n * (2 * n + m) - m * m + 1.0) / (2.0 * n * (2.0 * m * n - m * m + 2.0))
    return -trigamma(m * n - 0.5 * m * m + 1.0) + coeff * trigamma(n + 0.5)


def induced_mean_T(p: EnsembleParams) -> float:
    """Mean of T = sum x ln x over the unconstrained ensemble: d * psi0(m+a+1)."""
    return p.d * digamma(p.m + p.alpha + 1.0)


def induced_variance_T(p: EnsembleParams) -> float:
    """Variance of T over the unconstrained ensemble, valid for any alpha > -1."""
    m, a = p.m, p.alpha
    c = m * (m + 2.0 * a + 1.0)
    psi0 = digamma(m + a + 1.0)
    psi1 = trigamma(m + a + 1.0)
    poly = 5.0 * m * m + 5.0 * m + 10.0 * a * m + 4.0 * a * a + 4.0 * a + 2.0
    return c * psi0 + 0.5 * c * psi0 * psi0 + c * poly / (4.0 * (2.0 * m + 2.0 * a + 1.0)) * psi1


def induced_variance_T_physical(p: EnsembleParams) -> float:
    """The (m, n)-specialized form of the induced variance; equal to
    induced_variance_T under alpha = n - m - 1/2, kept separate as a check."""
    n = _require_physical(p, "induced_variance_T_physical")
    m = p.m
    psi0 = digamma(n + 0.5)
    psi1 = trigamma(n + 0.5)
    return m * (2.0 * n - m) * (
        psi0 + 0.5 * psi0 * psi0
        + (4.0 * n * n + 2.0 * m * n - m * m + 1.0) / (8.0 * n) * psi1
    )


def second_moment_from_T(p: EnsembleParams, e_h_t2: float, e_f_s: float) -> float:
    """E_f[S^2] from E_h[T^2] and E_f[S] through the trace factorization."""
    if not p.d > 0.0:
        raise ParameterError("second_moment_from_T needs d > 0")
    d = p.d
    psi0 = digamma(d + 2.0)
    return (e_h_t2 / (d * (d + 1.0))
            + 2.0 * psi0 * e_f_s - psi0 * psi0 - trigamma(d + 2.0))


def trace_density(theta: float, p: EnsembleParams) -> float:
    """Density of theta = sum x_i: Gamma(d, 1), evaluated in log space."""
    theta = float(theta)
    if theta < 0.0:
        raise DomainError(f"trace density is supported on [0, inf), got {theta}")
    if theta == 0.0:
        if p.d > 1.0:
            return 0.0
        if p.d == 1.0:
            return 1.0
        raise DomainError("trace density diverges at theta = 0 for d < 1")
    return math.exp(-theta + (p.d - 1.0) * math.log(theta) - log_gamma(p.d))


def entropy_S(lambdas: Sequence[float]) -> float:
    """von Neumann entropy -sum l ln l of a simplex spectrum (0 ln 0 := 0)."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise InputError("spectrum must be a nonempty 1-d vector")
    if np.any(lam < -SPECTRUM_SUM_TOL) or np.any(lam > 1.0 + SPECTRUM_SUM_TOL):
        raise InputError("spectrum entries must lie in [0, 1]")
    if abs(float(lam.sum()) - 1.0) > SPECTRUM_SUM_TOL:
        raise InputError(f"spectrum must sum to 1 within {SPECTRUM_SUM_TOL}")
    pos = lam[lam > 0.0]
    return float(-np.sum(pos * np.log(pos)))


def entropy_T(xs: Sequence[float]) -> float:
    """Induced entropy sum x ln x of an unconstrained spectrum."""
    x = np.asarray(xs, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise InputError("raw spectrum must be a nonempty 1-d vector")
    if np.any(x <= 0.0):
        raise InputError("raw spectrum entries must be strictly positive")
    return float(np.sum(x * np.log(x)))


def standardize(s_value, p: EnsembleParams):
    """Center and scale an entropy value by the exact mean and variance."""
    var = variance_entropy(p)
    if not var > 0.0:
        raise ParameterError("standardization is degenerate (zero variance, m = 1)")
    return (np.asarray(s_value, dtype=float) - mean_entropy(p)) / math.sqrt(var)
