"""Acceptance gate: every exit criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run pytest with -s or read the captured
output).  Tolerances and grids are pinned here and match the documented
contracts of the modules under test; none are tightened or loosened at run
time.  Monte Carlo criteria use fixed seeds, so they are deterministic.
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest

from bureshall import closedforms, identities, kernels, moments, sampler
from bureshall.errors import SingularParameterError

GRID_ALPHAS = (-0.5, 0.5, 1.5, 2.5, 1.25, 2.75)
MC_PAIRS = ((2, 2), (2, 3), (3, 4), (4, 6))
MC_COUNT = 100_000


def _report(num, passed, detail):
    tag = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {num}: {tag} - {detail}")
    assert passed, detail


def test_criterion_1_m1_degeneracy():
    """Mean and variance vanish identically at m = 1 for n = 1..20."""
    worst = 0.0
    for n in range(1, 21):
        p = moments.params_from_dims(1, n)
        worst = max(worst, abs(moments.mean_entropy(p)),
                    abs(moments.variance_entropy(p)))
    _report(1, worst <= 1e-14, f"m=1 degeneracy, worst |value| = {worst:.2e}")


def test_criterion_2_specialization_identity():
    """General-alpha induced variance equals its (m, n) specialization."""
    t0 = time.monotonic()
    worst = 0.0
    for m in range(1, 13):
        for n in range(m, 13):
            p = moments.params_from_dims(m, n)
            a = moments.induced_variance_T(p)
            b = moments.induced_variance_T_physical(p)
            worst = max(worst, abs(a - b) / abs(b))
    elapsed = time.monotonic() - t0
    _report(2, worst <= 1e-12 and elapsed < 1.0,
            f"specialization identity, worst rel = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_3_identity_suite():
    """500 seeded random cases per identity, residuals <= 1e-11."""
    t0 = time.monotonic()
    worst, worst_id = 0.0, ""
    for idx, iid in enumerate(identities.IDENTITY_IDS):
        for case in identities.random_cases(iid, 500, seed=7 + idx):
            r = identities.identity_residual(case)
            if r > worst:
                worst, worst_id = r, iid
    elapsed = time.monotonic() - t0
    _report(3, worst <= 1e-11 and elapsed < 10.0,
            f"identity suite (5000 cases), worst = {worst:.2e} ({worst_id}), "
            f"{elapsed:.1f}s")


def test_criterion_4_closed_form_assembly():
    """Assembled (I_A - I_BC - 2 I_D)/2 equals the direct variance at 1e-9
    on the (m, alpha) grid; digamma-sum coefficients cancel exactly."""
    t0 = time.monotonic()
    worst = 0.0
    singular = []
    for m in range(1, 11):
        for alpha in GRID_ALPHAS:
            assert closedforms.sum_block_cancels(m, alpha)
            exact = moments.induced_variance_T(moments.params_from_alpha(m, alpha))
            try:
                bundle = closedforms.assemble_variance(m, alpha)
            except SingularParameterError:
                # (1, -1/2) sits on the m + 2 alpha = 0 prefactor zero
                singular.append((m, alpha))
                continue
            worst = max(worst, abs(bundle.v_h_t - exact) / abs(exact))
    elapsed = time.monotonic() - t0
    _report(4, worst <= 1e-9 and singular == [(1, -0.5)] and elapsed < 30.0,
            f"assembly grid (59 points + 1 documented singular), "
            f"worst rel = {worst:.2e}, {elapsed:.1f}s")


def _limit_closed_form(form, m):
    # alpha -> 0 limit of the removable-singular closed forms: extended
    # precision at a dyadic alpha small enough for a ~1e-12 bias yet large
    # enough that 1 + alpha is still representable in the double arguments
    with mp.workdps(60):
        return float(form(m, 2.0**-40, closedforms._ExtendedCtx))


def test_criterion_5_kernel_oracle():
    """Quadrature I_A, I_B + I_C, I_D match the closed forms at 1e-6;
    biorthogonality at 1e-8; density normalizations at 1e-8 / 1e-6."""
    t0 = time.monotonic()
    failures = []
    for (m, alpha) in ((1, 0.0), (2, 0.5), (2, -0.5), (3, 0.5)):
        ctx = kernels.build_context(m, alpha)
        if ctx.biorthogonality_residual > 1e-8:
            failures.append(f"biorth({m},{alpha})")
        res = kernels.oracle_integrals(ctx)
        if alpha == 0.0:
            ia = _limit_closed_form(closedforms._closed_form_ia, m)
            ibc = _limit_closed_form(closedforms._closed_form_ibc, m)
        else:
            ia = closedforms.closed_form_IA(m, alpha)
            ibc = closedforms.closed_form_IBC(m, alpha)
        idv = closedforms.closed_form_ID(m, alpha)
        for name, got, want in (("I_A", res.i_a, ia),
                                ("I_BC", res.i_b + res.i_c, ibc),
                                ("I_D", res.i_d, idv)):
            if abs(got - want) > 1e-6 * max(1.0, abs(want)):
                failures.append(f"{name}({m},{alpha})")
        norms = kernels.density_normalizations(ctx)
        if abs(norms["h1_norm"] - 1.0) > 1e-8:
            failures.append(f"h1({m},{alpha})")
        if m >= 2 and abs(norms["h2_norm"] - 1.0) > 1e-6:
            failures.append(f"h2({m},{alpha})")
    elapsed = time.monotonic() - t0
    _report(5, not failures and elapsed < 120.0,
            f"kernel oracle vs closed forms, failures = {failures or 'none'}, "
            f"{elapsed:.1f}s")


@pytest.fixture(scope="module")
def mc_batches():
    """One MCMC-derived and one matrix-model batch per (m, n) pair."""
    out = {}
    for (m, n) in MC_PAIRS:
        p = moments.params_from_dims(m, n)
        seed = 101 + m * 10 + n
        raw = sampler.sample_unconstrained(p, MC_COUNT,
                                           sampler.McmcConfig(seed=seed))
        out[(m, n)] = (sampler.to_constrained(raw),
                       sampler.sample_matrix_model(m, n, MC_COUNT, seed=seed + 1))
    return out


def test_criterion_6_monte_carlo_vs_exact(mc_batches):
    """Both samplers within 3 se of the exact mean and variance, and
    two-sample KS agreement at p > 0.01, at 1e5 samples."""
    t0 = time.monotonic()
    failures = []
    for (m, n), (mc, mat) in mc_batches.items():
        p = moments.params_from_dims(m, n)
        em, ev = moments.mean_entropy(p), moments.variance_entropy(p)
        for batch, name in ((mc, "mcmc"), (mat, "matrix")):
            rep = sampler.summarize(batch, p)
            if abs(rep.mean - em) > 3.0 * rep.se_mean:
                failures.append(f"{name}-mean({m},{n})")
            if abs(rep.variance - ev) > 3.0 * rep.se_variance:
                failures.append(f"{name}-var({m},{n})")
        _, pvalue = sampler.two_sample_ks(mc.values, mat.values)
        if pvalue <= 0.01:
            failures.append(f"ks({m},{n})={pvalue:.4f}")
    elapsed = time.monotonic() - t0
    _report(6, not failures and elapsed < 300.0,
            f"MC vs exact at 1e5 samples, failures = {failures or 'none'}, "
            f"{elapsed:.1f}s")


def test_criterion_7_figure_level_properties(mc_batches):
    """Negative skewness at (4,6); KS-vs-normal shrinks from (4,6) to (16,24)."""
    t0 = time.monotonic()
    p46 = moments.params_from_dims(4, 6)
    rep46 = sampler.summarize(mc_batches[(4, 6)][0], p46)
    se = sampler.skewness_se(MC_COUNT)
    skew_ok = rep46.skewness < -3.0 * se
    p1624 = moments.params_from_dims(16, 24)
    mc1624 = sampler.to_constrained(sampler.sample_unconstrained(
        p1624, MC_COUNT, sampler.McmcConfig(seed=141)))
    rep1624 = sampler.summarize(mc1624, p1624)
    ks_ok = rep1624.ks_statistic < rep46.ks_statistic
    elapsed = time.monotonic() - t0
    _report(7, skew_ok and ks_ok and elapsed < 600.0,
            f"skew(4,6) = {rep46.skewness:.4f} ({rep46.skewness / se:.0f} se), "
            f"KS(16,24) = {rep1624.ks_statistic:.4f} < "
            f"KS(4,6) = {rep46.ks_statistic:.4f}: {ks_ok}, {elapsed:.1f}s")


def test_criterion_8_moment_relation_closure():
    """MC E_h[T^2] + exact E_f[S] reproduce MC E_f[S^2] within 3 combined se."""
    failures = []
    for (m, n) in ((2, 2), (3, 4)):
        p = moments.params_from_dims(m, n)
        raw = sampler.sample_unconstrained(p, MC_COUNT,
                                           sampler.McmcConfig(seed=150 + m))
        t2 = raw.values**2
        pred = moments.second_moment_from_T(p, float(t2.mean()),
                                            moments.mean_entropy(p))
        se_pred = float(t2.std(ddof=1)) / math.sqrt(t2.size) / (p.d * (p.d + 1.0))
        mat = sampler.sample_matrix_model(m, n, MC_COUNT, seed=160 + m)
        s2 = mat.values**2
        got = float(s2.mean())
        se_got = float(s2.std(ddof=1)) / math.sqrt(s2.size)
        dev = abs(pred - got) / math.hypot(se_pred, se_got)
        if dev > 3.0:
            failures.append(f"({m},{n}): {dev:.2f} se")
    _report(8, not failures,
            f"moment-relation closure, failures = {failures or 'none'}")
