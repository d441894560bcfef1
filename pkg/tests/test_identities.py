"""Summation identities: spot cases, randomized domains, derivative variants."""

import math

import pytest

from bureshall import identities
from bureshall.errors import ParameterError
from bureshall.identities import (IdentityCase, identity_lhs, identity_residual,
                                  identity_rhs, random_cases, t3t2_lhs, t3t2_rhs)
from bureshall.specfun import EULER_GAMMA, digamma, log_gamma

TOL = 1e-11


def test_a1_single_term():
    c = IdentityCase("A1", m=1, a=0.0)
    assert identity_lhs(c) == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert identity_rhs(c) == pytest.approx(-EULER_GAMMA, abs=1e-14)


def test_a5_two_terms():
    c = IdentityCase("A5", m=2)
    assert identity_lhs(c) == pytest.approx(digamma(2.0) + digamma(1.0) / 2, abs=1e-15)
    assert identity_residual(c) <= TOL


def test_l41_spec_point():
    # m=3, alpha=1/2, i=s=0: lhs is sum_{j=0}^{2} (j+a+1) G^2(j+2a+2)/G^2(j+1)
    a = 0.5
    c = IdentityCase("L41", m=3, alpha=a, i=0.0, s=0.0)
    direct = math.fsum(
        (j + a + 1) * math.exp(2 * log_gamma(j + 2 * a + 2) - 2 * log_gamma(j + 1.0))
        for j in range(3))
    assert identity_lhs(c) == pytest.approx(direct, rel=1e-14)
    assert identity_residual(c) <= TOL


def test_t3t2_spec_point():
    # i=1, s=2, alpha=1/2, m=4: rhs = 1/(2 G(3) G(4) (i+s+2a+4) G(i+2a+3) G(s+2a+3))
    c = IdentityCase("T3t2", m=4, alpha=0.5, i=1.0, s=2.0)
    want = 1.0 / (2 * math.gamma(3) * math.gamma(4) * 8.0
                  * math.gamma(5.0) * math.gamma(6.0))
    assert identity_rhs(c) == pytest.approx(want, rel=1e-14)
    assert identity_residual(c) <= TOL


@pytest.mark.parametrize("iid", identities.IDENTITY_IDS)
def test_randomized_residuals(iid):
    seed = 20240 + identities.IDENTITY_IDS.index(iid)
    cases = random_cases(iid, 200, seed=seed)
    worst = max(identity_residual(c) for c in cases)
    assert worst <= TOL, f"{iid}: worst residual {worst:.2e}"


def test_a6_swap_symmetry():
    # swapping (a, b) maps A6 onto itself; residual unchanged within noise
    c1 = IdentityCase("A6", m=7, a=2.3, b=5.1)
    c2 = IdentityCase("A6", m=7, a=5.1, b=2.3)
    assert abs(identity_residual(c1) - identity_residual(c2)) <= 1e-12


def test_a7_domain_boundary():
    c = IdentityCase("A7", m=5, a=5.5)
    assert identity_residual(c) <= TOL


def test_a6_rejects_near_coincident():
    with pytest.raises(ParameterError):
        IdentityCase("A6", m=3, a=1.0, b=1.0 + 1e-9)


def test_a7_rejects_a_below_m():
    with pytest.raises(ParameterError):
        IdentityCase("A7", m=5, a=4.0)


def test_t3t2_holds_at_real_arguments():
    # the gamma continuation keeps the identity exact off the integer grid
    for (m, a, i, s) in [(4, 0.5, 1.25, 2.5), (3, -0.4, 0.3, 1.7), (6, 1.2, 2.0, 3.8)]:
        lhs = t3t2_lhs(m + 40, a, i, s)  # long enough to capture the tail
        rhs = t3t2_rhs(a, i, s)
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs))


@pytest.mark.parametrize("m,alpha,i,s", [(4, 0.5, 1.0, 2.0), (3, 1.25, 0.0, 2.0),
                                          (5, -0.3, 2.0, 2.0)])
def test_t3t2_derivative_variants(m, alpha, i, s):
    """Central finite differences of both sides in i, in s, and mixed."""
    h = 1e-4

    def sides(ii, ss):
        return t3t2_lhs(m, alpha, ii, ss), t3t2_rhs(alpha, ii, ss)

    for tag, stencil in {
        "d/di": [((i + h, s), 1), ((i - h, s), -1)],
        "d/ds": [((i, s + h), 1), ((i, s - h), -1)],
        "d2/dids": [((i + h, s + h), 1), ((i + h, s - h), -1),
                    ((i - h, s + h), -1), ((i - h, s - h), 1)],
    }.items():
        dl = math.fsum(w * sides(*pt)[0] for pt, w in stencil)
        dr = math.fsum(w * sides(*pt)[1] for pt, w in stencil)
        assert abs(dl - dr) <= 1e-6 * max(abs(dr), 1e-12), f"{tag} mismatch"


def test_case_validation():
    with pytest.raises(ParameterError):
        IdentityCase("A1", m=2, a=-1.0)
    with pytest.raises(ParameterError):
        IdentityCase("L41", m=3, alpha=0.5, i=3.0, s=0.0)
    with pytest.raises(ParameterError):
        IdentityCase("nope", m=1)
