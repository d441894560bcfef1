"""Closed forms of the three kernel integrals and their assembly.

The integrals I_A, I_B + I_C and I_D evaluate to linear combinations of
polygamma values at the five arguments

    a+1, 2a+1, m+1, m+a+1, m+2a+1, 2m+2a+1

plus five length-m digamma sums that appear identically (up to prefactor)
in I_A and in I_B + I_C and cancel in the difference.  The combination
coefficients are bivariate integer polynomials in (m, a), shipped as an
expanded monomial table (data/coefficients.txt, checksummed).

Coefficients and prefactors are evaluated in exact rational arithmetic
(every float alpha is a dyadic rational, so Fraction(alpha) is exact) and
rounded to binary floating point exactly once, before being combined with
the polygamma values.  The combination itself goes through math.fsum: the
assembly cancels ~6 digits at m = 10 already, and naive accumulation would
surrender most of them.

An extended-precision path (mpmath, 50 digits) mirrors the double path and
serves as the in-package reference for the precision stress test.
"""

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import mpmath as mp

from .errors import ConstructionError, ParameterError, SingularParameterError
from .specfun import digamma, trigamma

ALPHA_EXCLUSION = 1e-3  # |alpha| below this: removable 1/alpha singularity in I_A, I_BC

TABLE_SIZES = {"IA": 8, "IBC": 12, "ID": 7}

_EXT_DPS = 50
_LIMIT_EPS = 2.0 ** -40  # parameter shift for the removable alpha = -1/2 point


def _load_tables():
    text = resources.files("bureshall").joinpath("data/coefficients.txt").read_text("ascii")
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("# sha256 "):
        raise ConstructionError("coefficient table is missing its checksum line")
    body = "\n".join(lines[:-1]) + "\n"
    want = lines[-1].split()[-1]
    got = hashlib.sha256(body.encode("ascii")).hexdigest()
    if got != want:
        raise ConstructionError(
            f"coefficient table checksum mismatch (file {want[:12]}..., content {got[:12]}...)")
    tables: dict = {tid: {} for tid in TABLE_SIZES}
    for line in lines[:-1]:
        tid, name, pm, pa, val = line.split()
        tables[tid].setdefault(name, []).append((int(pm), int(pa), int(val)))
    for tid, size in TABLE_SIZES.items():
        if len(tables[tid]) != size:
            raise ConstructionError(
                f"table {tid} has {len(tables[tid])} coefficients, expected {size}")
    return tables


_TABLES = _load_tables()


def eval_coefficient(table_id: str, name: str, m: int, alpha) -> Fraction:
    """Exact rational value of one table coefficient at (m, alpha)."""
    try:
        monomials = _TABLES[table_id][name]
    except KeyError:
        raise KeyError(f"no coefficient {name!r} in table {table_id!r}") from None
    a = Fraction(alpha)
    return sum((Fraction(val) * m**pm * a**pa for pm, pa, val in monomials),
               start=Fraction(0))


def coefficient_names(table_id: str):
    return sorted(_TABLES[table_id])


def _check_regular(m: int, alpha: float, what: str) -> None:
    if m < 1:
        raise ParameterError(f"{what} needs m >= 1")
    if not alpha > -1.0:
        raise ParameterError(f"{what} needs alpha > -1")
    if abs(alpha) < ALPHA_EXCLUSION:
        raise SingularParameterError(
            f"{what} has a removable 1/alpha singularity; |alpha| < {ALPHA_EXCLUSION} "
            "is excluded (use the direct variance formula instead)")
    if m + 2.0 * alpha == 0.0:
        raise SingularParameterError(f"{what} prefactor is singular at m + 2 alpha = 0")
    if alpha != -0.5 and abs(2.0 * alpha + 1.0) < ALPHA_EXCLUSION:
        # exactly -1/2 is evaluated as a limit; a near-miss only loses digits
        raise SingularParameterError(
            f"{what} loses precision near the removable alpha = -1/2 point; "
            "evaluate at alpha = -1/2 exactly or away from it")


def _psi0_cont(x: float) -> float:
    """digamma continued to (-1, 0) by one recurrence step (arguments
    2 alpha + 1 and k + 2 alpha reach into that window for alpha < -1/2)."""
    if x > 0.0:
        return digamma(x)
    return digamma(x + 1.0) - 1.0 / x


def _psi1_cont(x: float) -> float:
    if x > 0.0:
        return trigamma(x)
    return trigamma(x + 1.0) + 1.0 / (x * x)


# Exact rational prefactor denominators of the two sum-carrying closed forms.
def _den_ia(m: int, a: Fraction) -> Fraction:
    return 36 * a * (m + a) * (m + 2 * a) * (2 * m + 2 * a + 1) ** 3


def _den_ibc(m: int, a: Fraction) -> Fraction:
    return 36 * a * (m + a) * (m + a + 1) * (m + 2 * a) * (2 * m + 2 * a + 1) ** 4


def sum_block_coefficients(m: int, alpha):
    """Exact coefficients of the five unsimplified digamma sums inside
    I_A and inside I_B + I_C.  Their difference must vanish identically."""
    a = Fraction(alpha)
    den_a, den_bc = _den_ia(m, a), _den_ibc(m, a)
    if den_a == 0 or den_bc == 0:
        raise SingularParameterError(
            f"sum-block prefactor denominator vanishes at (m={m}, alpha={alpha})")
    c_ia = Fraction(-2) * eval_coefficient("IA", "a0", m, a) / den_a
    c_ibc = Fraction(2) * eval_coefficient("IBC", "bc0", m, a) / den_bc
    return c_ia, c_ibc


def sum_block_cancels(m: int, alpha) -> bool:
    """True iff the digamma-sum coefficients of I_A - (I_B + I_C) cancel
    exactly in rational arithmetic (cross-multiplied, so prefactor zeros do
    not turn the check into 0/0)."""
    a = Fraction(alpha)
    lhs = Fraction(-2) * eval_coefficient("IA", "a0", m, a) * _den_ibc(m, a)
    rhs = Fraction(2) * eval_coefficient("IBC", "bc0", m, a) * _den_ia(m, a)
    return lhs == rhs


def _digamma_sums(m, alpha, psi0):
    """The five length-m sums shared by I_A and I_B + I_C."""
    s1 = math.fsum(psi0(k + alpha) / k for k in range(1, m + 1))
    s2 = math.fsum(psi0(k + 2 * alpha) / k for k in range(1, m + 1))
    s3 = math.fsum(psi0(k + m + 2 * alpha) / k for k in range(1, m + 1))
    s4 = math.fsum(psi0(k + m + 2 * alpha) / (k + alpha) for k in range(1, m + 1))
    s5 = math.fsum(psi0(k + m + 2 * alpha) / (k + 2 * alpha) for k in range(1, m + 1))
    return s1 + s2 - s3 + s4 + s5


class _DoubleCtx:
    """Double-precision arithmetic context for the closed forms."""

    accumulate = staticmethod(math.fsum)
    psi0 = staticmethod(_psi0_cont)
    psi1 = staticmethod(_psi1_cont)

    @staticmethod
    def const(fr: Fraction) -> float:
        return float(fr)

    @staticmethod
    def sums(m, alpha, psi0):
        # the five sums, each fsum-accumulated, combined once more exactly
        return _digamma_sums(m, alpha, psi0)


class _ExtendedCtx:
    """mpmath arithmetic context; the reference path for precision stress."""

    @staticmethod
    def accumulate(terms):
        return mp.fsum(terms)

    @staticmethod
    def psi0(x):
        return mp.digamma(mp.mpf(x))

    @staticmethod
    def psi1(x):
        return mp.polygamma(1, mp.mpf(x))

    @staticmethod
    def const(fr: Fraction):
        return mp.mpf(fr.numerator) / mp.mpf(fr.denominator)

    @staticmethod
    def sums(m, alpha, psi0):
        s1 = mp.fsum(psi0(k + alpha) / k for k in range(1, m + 1))
        s2 = mp.fsum(psi0(k + 2 * alpha) / k for k in range(1, m + 1))
        s3 = mp.fsum(psi0(k + m + 2 * alpha) / k for k in range(1, m + 1))
        s4 = mp.fsum(psi0(k + m + 2 * alpha) / (k + alpha) for k in range(1, m + 1))
        s5 = mp.fsum(psi0(k + m + 2 * alpha) / (k + 2 * alpha) for k in range(1, m + 1))
        return s1 + s2 - s3 + s4 + s5


def _closed_form_ia(m, alpha, ctx):
    a = Fraction(alpha)
    den = _den_ia(m, a)
    coef = {name: ctx.const(eval_coefficient("IA", name, m, a) / den)
            for name in _TABLES["IA"]}
    psi0, psi1 = ctx.psi0, ctx.psi1
    p1 = psi0(1.0)
    pa1 = psi0(alpha + 1.0)
    p2a1 = psi0(2 * alpha + 1.0)
    pm1 = psi0(m + 1.0)
    pma1 = psi0(m + alpha + 1.0)
    pm2a1 = psi0(m + 2 * alpha + 1.0)
    p2m2a1 = psi0(2 * m + 2 * alpha + 1.0)
    bracket = ctx.accumulate([
        -2 * p1 * pa1, -2 * p1 * p2a1, 2 * p1 * pm2a1,
        pa1 * pa1, p2a1 * p2a1, 2 * pa1 * pm1,
        -2 * pa1 * pma1, -2 * pa1 * pm2a1,
        2 * p2a1 * pm1, -4 * p2a1 * pm2a1,
        -2 * pm1 * pm2a1, -2 * pma1 * pm2a1,
        4 * pma1 * p2m2a1, -pm2a1 * pm2a1,
        8 * pm2a1 * p2m2a1, -4 * p2m2a1 * p2m2a1,
        -psi1(alpha + 1.0), -psi1(2 * alpha + 1.0), psi1(m + 2 * alpha + 1.0),
    ])
    sums = ctx.sums(m, alpha, psi0)
    return ctx.accumulate([
        -2 * coef["a0"] * sums,
        coef["a1"],
        coef["a2"] * (p1 - pm1),
        coef["a3"] * pa1,
        coef["a4"] * p2a1,
        coef["a5"] * pma1,
        coef["a6"] * pm2a1,
        coef["a7"] * p2m2a1,
        coef["a0"] * bracket,
    ])


def _closed_form_ibc(m, alpha, ctx):
    a = Fraction(alpha)
    den = _den_ibc(m, a)
    coef = {name: ctx.const(eval_coefficient("IBC", name, m, a) / den)
            for name in _TABLES["IBC"]}
    psi0, psi1 = ctx.psi0, ctx.psi1
    p1 = psi0(1.0)
    pa1 = psi0(alpha + 1.0)
    p2a1 = psi0(2 * alpha + 1.0)
    pm1 = psi0(m + 1.0)
    pma1 = psi0(m + alpha + 1.0)
    pm2a1 = psi0(m + 2 * alpha + 1.0)
    p2m2a1 = psi0(2 * m + 2 * alpha + 1.0)
    bracket = ctx.accumulate([
        2 * p1 * pa1, 2 * p1 * p2a1, -2 * p1 * pm2a1,
        -pa1 * pa1, -p2a1 * p2a1, -2 * pa1 * pm1,
        2 * pa1 * pma1, 2 * pa1 * pm2a1,
        -2 * p2a1 * pm1, 4 * p2a1 * pm2a1, 2 * pm1 * pm2a1,
        psi1(alpha + 1.0), psi1(2 * alpha + 1.0),
        -psi1(m + alpha + 1.0), -3 * psi1(m + 2 * alpha + 1.0),
        2 * psi1(2 * m + 2 * alpha + 1.0),
    ])
    sums = ctx.sums(m, alpha, psi0)
    return ctx.accumulate([
        2 * coef["bc0"] * sums,
        coef["bc1"],
        coef["bc2"] * (p1 - pm1),
        coef["bc3"] * pa1,
        coef["bc4"] * p2a1,
        coef["bc5"] * pma1,
        coef["bc6"] * pm2a1,
        coef["bc7"] * p2m2a1,
        coef["bc0"] * bracket,
        coef["bc8"] * pma1 * pma1,
        coef["bc9"] * pma1 * pm2a1,
        coef["bc10"] * (pma1 * p2m2a1 + 2 * pm2a1 * p2m2a1 - p2m2a1 * p2m2a1),
        coef["bc11"] * pm2a1 * pm2a1,
    ])


def _closed_form_id(m, alpha, ctx):
    a = Fraction(alpha)
    den = Fraction(8) * (2 * m + 2 * a + 1) ** 4
    coef = {name: ctx.const(Fraction(m) * eval_coefficient("ID", name, m, a) / den)
            for name in _TABLES["ID"]}
    psi0, psi1 = ctx.psi0, ctx.psi1
    pma1 = psi0(m + alpha + 1.0)
    pm2a1 = psi0(m + 2 * alpha + 1.0)
    p2m2a1 = psi0(2 * m + 2 * alpha + 1.0)
    diff = pm2a1 - p2m2a1
    return ctx.accumulate([
        coef["d0"],
        coef["d1"] * pma1,
        coef["d2"] * pm2a1,
        coef["d3"] * p2m2a1,
        coef["d4"] * diff * (diff + pma1),
        coef["d5"] * pma1 * pma1,
        coef["d6"] * (psi1(m + 2 * alpha + 1.0) - psi1(2 * m + 2 * alpha + 1.0)),
    ])


def _half_limit(form, m: int) -> float:
    """Value of a closed form at the removable alpha = -1/2 point: the
    expression's psi(2 alpha + 1) terms blow up individually there, so the
    limit is taken by a +-eps parameter average in extended precision (the
    pole parts are odd in eps and cancel; the bias is O(eps^2))."""
    with mp.workdps(_EXT_DPS + 10):
        hi = form(m, -0.5 + _LIMIT_EPS, _ExtendedCtx)
        lo = form(m, -0.5 - _LIMIT_EPS, _ExtendedCtx)
        return float((hi + lo) / 2)


def closed_form_IA(m: int, alpha: float, extended: bool = False) -> float:
    """I_A from its closed form; singular parameters are rejected."""
    _check_regular(m, alpha, "closed_form_IA")
    if alpha == -0.5:
        return _half_limit(_closed_form_ia, m)
    if extended:
        with mp.workdps(_EXT_DPS):
            return float(_closed_form_ia(m, alpha, _ExtendedCtx))
    return _closed_form_ia(m, alpha, _DoubleCtx)


def closed_form_IBC(m: int, alpha: float, extended: bool = False) -> float:
    """I_B + I_C from the closed form (only the sum is available)."""
    _check_regular(m, alpha, "closed_form_IBC")
    if alpha == -0.5:
        return _half_limit(_closed_form_ibc, m)
    if extended:
        with mp.workdps(_EXT_DPS):
            return float(_closed_form_ibc(m, alpha, _ExtendedCtx))
    return _closed_form_ibc(m, alpha, _DoubleCtx)


def closed_form_ID(m: int, alpha: float, extended: bool = False) -> float:
    """I_D from its closed form; regular for every m >= 1, alpha > -1."""
    if m < 1:
        raise ParameterError("closed_form_ID needs m >= 1")
    if not alpha > -1.0:
        raise ParameterError("closed_form_ID needs alpha > -1")
    if extended:
        with mp.workdps(_EXT_DPS):
            return float(_closed_form_id(m, alpha, _ExtendedCtx))
    return _closed_form_id(m, alpha, _DoubleCtx)


@dataclass(frozen=True)
class IntegralBundle:
    """The three closed-form integrals and the variance they assemble to.

    v_h_t = (i_a - i_bc - 2 * i_d) / 2.  Note the minus sign on i_d: the
    plus sign that sometimes accompanies this combination is inconsistent
    with the two-point density it is derived from, and only the minus sign
    reproduces the direct variance formula (which the assembly check below
    enforces at 1e-9 relative).
    """

    i_a: float
    i_bc: float
    i_d: float
    v_h_t: float


def assemble_variance(m: int, alpha: float, extended: bool = False) -> IntegralBundle:
    """Assemble V_h[T] from the three closed forms."""
    i_a = closed_form_IA(m, alpha, extended=extended)
    i_bc = closed_form_IBC(m, alpha, extended=extended)
    i_d = closed_form_ID(m, alpha, extended=extended)
    return IntegralBundle(i_a=i_a, i_bc=i_bc, i_d=i_d,
                          v_h_t=0.5 * (i_a - i_bc - 2.0 * i_d))
