"""Monte Carlo layer: physics checks, reproducibility, backend parity."""

import math
import os

import numpy as np
import pytest

from bureshall import moments, sampler
from bureshall.errors import InputError, ParameterError
from bureshall.sampler import (McmcConfig, sample_matrix_model,
                               sample_unconstrained, skewness_se, summarize,
                               to_constrained, two_sample_ks)
from bureshall.sampler._backend import compiled_available

COUNT = 30_000


@pytest.fixture(scope="module")
def raw22():
    p = moments.params_from_dims(2, 2)
    return sample_unconstrained(p, COUNT, McmcConfig(seed=205))


def test_config_validation():
    with pytest.raises(ParameterError):
        McmcConfig(burn_in=10)
    with pytest.raises(ParameterError):
        McmcConfig(proposal_sigma=0.0)
    with pytest.raises(ParameterError):
        McmcConfig(chains=0)
    p = moments.params_from_dims(3, 4)
    with pytest.raises(ParameterError):
        sample_unconstrained(p, 100, McmcConfig(thinning=2))  # below m


def test_mcmc_gamma_limit_m1():
    # m = 1, alpha = 0 is a plain Gamma(1) target
    p = moments.params_from_alpha(1, 0.0)
    batch = sample_unconstrained(p, COUNT, McmcConfig(seed=201))
    x = batch.spectra[:, 0]
    se = x.std(ddof=1) / math.sqrt(x.size)
    assert abs(x.mean() - 1.0) <= 3.0 * se
    se_t = math.sqrt(moments.induced_variance_T(p) / x.size)
    assert abs(batch.values.mean() - moments.induced_mean_T(p)) <= 3.0 * se_t


def test_mcmc_trace_is_gamma_d(raw22):
    # theta = sum x is Gamma(d): sample mean and variance both equal d
    p = raw22.params
    theta = raw22.spectra.sum(axis=1)
    n = theta.size
    se_mean = theta.std(ddof=1) / math.sqrt(n)
    assert abs(theta.mean() - p.d) <= 3.0 * se_mean
    c = theta - theta.mean()
    se_var = math.sqrt((np.mean(c**4) - np.var(theta) ** 2) / n)
    assert abs(np.var(theta, ddof=1) - p.d) <= 3.0 * se_var


def test_trace_independent_of_entropy(raw22):
    # the factorization makes theta independent of S
    s = to_constrained(raw22).values
    theta = raw22.spectra.sum(axis=1)
    corr = np.corrcoef(theta, s)[0, 1]
    assert abs(corr) <= 3.0 / math.sqrt(s.size)


def test_mcmc_acceptance_window(raw22):
    assert 0.1 <= raw22.acceptance_rate <= 0.7


def test_mcmc_chains_converged(raw22):
    assert raw22.rhat is not None
    assert raw22.rhat <= 1.05


def test_to_constrained_moments(raw22):
    p = raw22.params
    batch = to_constrained(raw22)
    assert batch.kind == "constrained"
    assert np.all(batch.values >= 0.0) and np.all(batch.values <= math.log(p.m) + 1e-12)
    rep = summarize(batch, p)
    assert abs(rep.mean - moments.mean_entropy(p)) <= 3.0 * rep.se_mean
    assert abs(rep.variance - moments.variance_entropy(p)) <= 3.0 * rep.se_variance


def test_to_constrained_requires_spectra(raw22):
    batch = to_constrained(raw22)
    with pytest.raises(InputError):
        to_constrained(batch)


def test_m1_constrained_entropy_is_zero():
    p = moments.params_from_alpha(1, 0.5)
    batch = to_constrained(sample_unconstrained(p, 500, McmcConfig(seed=202)))
    assert np.max(np.abs(batch.values)) <= 1e-12


def test_matrix_model_m_equals_n_is_haar(raw22):
    # nu = 0: weight is identically one, acceptance rate is exactly 1
    batch = sample_matrix_model(2, 2, 5000, seed=203)
    assert batch.acceptance_rate == 1.0
    ks, pvalue = two_sample_ks(batch.values, to_constrained(raw22).values)
    assert pvalue > 0.01


def test_matrix_model_m1_entropy_zero():
    batch = sample_matrix_model(1, 3, 500, seed=204)
    assert np.max(np.abs(batch.values)) <= 1e-12


def test_matrix_model_23_mean():
    p = moments.params_from_dims(2, 3)
    batch = sample_matrix_model(2, 3, COUNT, seed=206)
    rep = summarize(batch, p)
    assert abs(rep.mean - moments.mean_entropy(p)) <= 3.0 * rep.se_mean


def test_matrix_model_validation():
    with pytest.raises(ParameterError):
        sample_matrix_model(3, 2, 100, seed=0)


def test_cross_sampler_agreement():
    for (m, n) in [(2, 2), (2, 3), (3, 4)]:
        p = moments.params_from_dims(m, n)
        mc = to_constrained(sample_unconstrained(p, 20000, McmcConfig(seed=207)))
        mat = sample_matrix_model(m, n, 20000, seed=208)
        _, pvalue = two_sample_ks(mc.values, mat.values)
        assert pvalue > 0.01, f"(m={m}, n={n}): p = {pvalue:.4f}"


def test_reproducibility_bit_identical():
    p = moments.params_from_dims(2, 3)
    cfg = McmcConfig(seed=209, chains=8)
    a = sample_unconstrained(p, 2000, cfg)
    b = sample_unconstrained(p, 2000, cfg)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.spectra, b.spectra)
    c = sample_matrix_model(2, 3, 2000, seed=210)
    d = sample_matrix_model(2, 3, 2000, seed=210)
    assert np.array_equal(c.values, d.values)


@pytest.mark.skipif(not compiled_available(), reason="compiled core not built")
def test_backend_parity():
    # same seed and config through both backends: identical accept decisions,
    # values equal to within transcendental-function rounding
    p = moments.params_from_dims(2, 3)
    cfg = McmcConfig(seed=211, chains=8)
    fast = sample_unconstrained(p, 3000, cfg)
    os.environ["BURES_FORCE_FALLBACK"] = "1"
    try:
        slow = sample_unconstrained(p, 3000, cfg)
    finally:
        del os.environ["BURES_FORCE_FALLBACK"]
    assert fast.backend == "compiled" and slow.backend == "fallback"
    assert fast.acceptance_rate == slow.acceptance_rate
    np.testing.assert_allclose(fast.values, slow.values, rtol=0, atol=1e-10)


def test_mcmc_standard_errors_are_calibrated():
    # z-scores of the batch mean across independent seeds: unit spread means
    # the reported (iid) standard errors are honest at the default thinning
    p = moments.params_from_dims(2, 3)
    em = moments.mean_entropy(p)
    zs = []
    for seed in range(300, 324):
        mc = to_constrained(sample_unconstrained(p, 20000, McmcConfig(seed=seed)))
        rep = summarize(mc, p)
        zs.append((rep.mean - em) / rep.se_mean)
    zs = np.asarray(zs)
    assert abs(zs.mean()) <= 0.5
    assert 0.6 <= zs.std(ddof=1) <= 1.5
    assert np.abs(zs).max() <= 4.0


def test_summarize_calibration():
    # exact normals: KS statistic should be O(1/sqrt(n))
    rng = np.random.default_rng(212)
    p = moments.params_from_dims(4, 6)
    z = rng.standard_normal(50_000)
    vals = moments.mean_entropy(p) + math.sqrt(moments.variance_entropy(p)) * z
    batch = sampler.SampleBatch(params=p, kind="constrained", values=vals,
                                seed=212, method="matrix")
    rep = summarize(batch, p)
    assert rep.ks_statistic <= 10.0 / math.sqrt(vals.size)
    assert abs(rep.skewness) <= 4.0 * skewness_se(vals.size)


def test_summarize_degenerate_m1():
    p = moments.params_from_dims(1, 4)
    batch = sampler.SampleBatch(params=p, kind="constrained",
                                values=np.zeros(500), seed=0, method="matrix")
    rep = summarize(batch, p)
    assert rep.degenerate and rep.ks_statistic is None


def test_summarize_count_floor():
    p = moments.params_from_dims(2, 2)
    batch = sampler.SampleBatch(params=p, kind="constrained",
                                values=np.zeros(50), seed=0, method="matrix")
    with pytest.raises(ParameterError):
        summarize(batch, p)
