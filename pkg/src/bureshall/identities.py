"""Machine-checkable finite-sum identities used by the closed-form derivation.

Ten identities are covered.  A1-A5 have fully closed right sides, A6-A8 are
semi-closed (their right side keeps one finite sum, which is evaluated
directly), and two gamma-ratio identities L41 / T3t2 reduce the kernel
double sums.  Each identity is exposed as a brute-force left side and a
closed-form right side so that a residual can be checked case by case.

For T3t2 the summation indices i, s are continued to real values through the
gamma function: the summand's reciprocal gammas vanish identically beyond
k = min(i, s) + 1 at integer (i, s), and the continuation is what gives the
derivative variants (checked by central finite differences) their meaning.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._gammareal import gamma as rgamma_gamma
from ._gammareal import rgamma
from .errors import ParameterError
from .specfun import digamma, trigamma

IDENTITY_IDS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "L41", "T3t2")

# A6 has a divided difference 1/(a-b); near-coincident parameters are
# rejected rather than expanded.
A6_MIN_GAP = 1e-6


@dataclass(frozen=True)
class IdentityCase:
    """One evaluation point of one identity."""

    id: str
    m: int
    a: Optional[float] = None
    b: Optional[float] = None
    alpha: Optional[float] = None
    i: Optional[float] = None
    s: Optional[float] = None

    def __post_init__(self):
        if self.id not in IDENTITY_IDS:
            raise ParameterError(f"unknown identity {self.id!r}")
        if self.m < 1:
            raise ParameterError("m must be >= 1")
        if self.id in ("A1", "A2", "A3", "A4"):
            if self.a is None or self.a < 0.0:
                raise ParameterError(f"{self.id} needs a >= 0")
        elif self.id == "A6":
            if self.a is None or self.b is None or self.a < 0.0 or self.b < 0.0:
                raise ParameterError("A6 needs a, b >= 0")
            if abs(self.a - self.b) < A6_MIN_GAP:
                raise ParameterError(f"A6 needs |a - b| >= {A6_MIN_GAP}")
        elif self.id in ("A7", "A8"):
            if self.a is None or not self.a > self.m:
                raise ParameterError(f"{self.id} needs a > m")
        elif self.id in ("L41", "T3t2"):
            if self.alpha is None or not self.alpha > -1.0:
                raise ParameterError(f"{self.id} needs alpha > -1")
            if self.i is None or self.s is None:
                raise ParameterError(f"{self.id} needs i and s")
            if self.id == "L41":
                if self.i != int(self.i) or self.s != int(self.s):
                    raise ParameterError("L41 needs integer i, s")
                if not (0 <= self.i <= self.m - 1 and 0 <= self.s <= self.m - 1):
                    raise ParameterError("L41 needs 0 <= i, s <= m - 1")
            else:
                if self.i < 0 or self.s < 0:
                    raise ParameterError("T3t2 needs i, s >= 0")
                if self.m < min(self.i, self.s) + 1:
                    raise ParameterError("T3t2 needs m >= min(i, s) + 1")


# -- left sides (brute force) -------------------------------------------------

def _lhs_A1(c):
    return math.fsum(digamma(k + c.a) for k in range(1, c.m + 1))


def _lhs_A2(c):
    return math.fsum(k * digamma(k + c.a) for k in range(1, c.m + 1))


def _lhs_A3(c):
    return math.fsum(k * k * digamma(k + c.a) for k in range(1, c.m + 1))


def _lhs_A4(c):
    return math.fsum(digamma(k + c.a) / (k + c.a) for k in range(1, c.m + 1))


def _lhs_A5(c):
    return math.fsum(digamma(c.m + 1 - k) / k for k in range(1, c.m + 1))


def _lhs_A6(c):
    return math.fsum(digamma(k + c.b) / (k + c.a) for k in range(1, c.m + 1))


def _lhs_A7(c):
    return math.fsum(digamma(k) / (c.a + 1 - k) for k in range(1, c.m + 1))


def _lhs_A8(c):
    return math.fsum(digamma(c.a + 1 - k) / k for k in range(1, c.m + 1))


def _lhs_L41(c):
    i, s, a = int(c.i), int(c.s), c.alpha
    total = 0.0
    for j in range(i, c.m):
        total += ((j + a + 1.0)
                  * rgamma_gamma(j + i + 2 * a + 2) * rgamma_gamma(j + s + 2 * a + 2)
                  * rgamma(j - i + 1.0) * rgamma(j - s + 1.0))
    return total


def t3t2_lhs(m: int, alpha: float, i: float, s: float) -> float:
    """Left side of T3t2 with i, s continued to real values."""
    total = 0.0
    for k in range(m + 1):
        total += ((k + alpha + 1.0)
                  * rgamma(s - k + 2.0) * rgamma(k + s + 2 * alpha + 4.0)
                  * rgamma(i - k + 2.0) * rgamma(k + i + 2 * alpha + 4.0))
    return total


def t3t2_rhs(alpha: float, i: float, s: float) -> float:
    """Right side of T3t2, analytic in (i, s)."""
    return (rgamma(i + 2.0) * rgamma(s + 2.0)
            * rgamma(i + 2 * alpha + 3.0) * rgamma(s + 2 * alpha + 3.0)
            / (2.0 * (i + s + 2 * alpha + 4.0)))


# -- right sides (closed / semi-closed) ---------------------------------------

def _rhs_A1(c):
    a, m = c.a, c.m
    return (m + a) * digamma(m + a + 1) - a * digamma(a + 1) - m


def _rhs_A2(c):
    a, m = c.a, c.m
    return (0.5 * (m * m + m - a * a + a) * digamma(m + a + 1)
            + 0.5 * (a - 1.0) * a * digamma(a + 1)
            + 0.25 * m * (2 * a - m - 3.0))


def _rhs_A3(c):
    a, m = c.a, c.m
    t1 = (2.0 * m**3 + 3.0 * m * m + m + 2.0 * a**3 - 3.0 * a * a + a) / 6.0 * digamma(m + a + 1)
    t2 = a * (2.0 * a * a - 3.0 * a + 1.0) / 6.0 * digamma(a + 1)
    return t1 - t2 - m * (4.0 * m * m + 15.0 * m - 6.0 * m * a + 12.0 * a * a - 24.0 * a + 17.0) / 36.0


def _rhs_A4(c):
    a, m = c.a, c.m
    return 0.5 * (-digamma(a + 1) ** 2 + digamma(m + a + 1) ** 2
                  - trigamma(a + 1) + trigamma(m + a + 1))


def _rhs_A5(c):
    m = c.m
    return (-digamma(1) * digamma(m + 1) + digamma(m + 1) ** 2
            - trigamma(1) + trigamma(m + 1))


def _rhs_A6(c):
    a, b, m = c.a, c.b, c.m
    tail = math.fsum(digamma(k + a) / (k + b) for k in range(1, m + 1))
    return (-tail + digamma(m + a + 1) * digamma(m + b + 1)
            - digamma(a + 1) * digamma(b + 1)
            + (digamma(m + a + 1) - digamma(m + b + 1)
               - digamma(a + 1) + digamma(b + 1)) / (a - b))


def _rhs_A7(c):
    a, m = c.a, c.m
    tail = math.fsum(digamma(k) / (k + a - m) for k in range(1, m + 1))
    return (tail + 0.5 * (digamma(a - m + 1) - digamma(a + 1)) ** 2
            - 0.5 * (trigamma(a - m + 1) - trigamma(a + 1)))


def _rhs_A8(c):
    a, m = c.a, c.m
    tail = math.fsum(digamma(k + a - m) / k for k in range(1, m + 1))
    return (-tail + (digamma(m + 1) - digamma(1)) * (digamma(a - m) + digamma(a + 1))
            + 0.5 * ((digamma(a - m) - digamma(a + 1)) ** 2
                     + trigamma(a + 1) - trigamma(a - m)))


def _rhs_L41(c):
    i, s, a, m = int(c.i), int(c.s), c.alpha, c.m
    return (rgamma_gamma(i + m + 2 * a + 2) * rgamma_gamma(s + m + 2 * a + 2)
            * rgamma(float(m - i)) * rgamma(float(m - s))
            / (2.0 * (i + s + 2 * a + 2.0)))


_LHS = {"A1": _lhs_A1, "A2": _lhs_A2, "A3": _lhs_A3, "A4": _lhs_A4,
        "A5": _lhs_A5, "A6": _lhs_A6, "A7": _lhs_A7, "A8": _lhs_A8,
        "L41": _lhs_L41,
        "T3t2": lambda c: t3t2_lhs(c.m, c.alpha, c.i, c.s)}

_RHS = {"A1": _rhs_A1, "A2": _rhs_A2, "A3": _rhs_A3, "A4": _rhs_A4,
        "A5": _rhs_A5, "A6": _rhs_A6, "A7": _rhs_A7, "A8": _rhs_A8,
        "L41": _rhs_L41,
        "T3t2": lambda c: t3t2_rhs(c.alpha, c.i, c.s)}


def identity_lhs(case: IdentityCase) -> float:
    return _LHS[case.id](case)


def identity_rhs(case: IdentityCase) -> float:
    return _RHS[case.id](case)


def identity_residual(case: IdentityCase) -> float:
    """|lhs - rhs| / max(1, |rhs|)."""
    rhs = identity_rhs(case)
    return abs(identity_lhs(case) - rhs) / max(1.0, abs(rhs))


def random_cases(identity_id: str, count: int, seed: int):
    """Seeded random cases inside the stated parameter domain of one identity."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        if identity_id in ("A1", "A2", "A3", "A4"):
            m = int(rng.integers(1, 21))
            cases.append(IdentityCase(identity_id, m, a=float(rng.uniform(0.0, 10.0))))
        elif identity_id == "A5":
            cases.append(IdentityCase(identity_id, int(rng.integers(1, 51))))
        elif identity_id == "A6":
            m = int(rng.integers(1, 21))
            while True:
                a = float(rng.uniform(0.0, 10.0))
                b = float(rng.uniform(0.0, 10.0))
                if abs(a - b) >= 1e-3:
                    break
            cases.append(IdentityCase(identity_id, m, a=a, b=b))
        elif identity_id in ("A7", "A8"):
            m = int(rng.integers(1, 21))
            cases.append(IdentityCase(identity_id, m, a=m + float(rng.uniform(0.1, 12.0))))
        elif identity_id in ("L41", "T3t2"):
            m = int(rng.integers(1, 13))
            cases.append(IdentityCase(
                identity_id, m,
                alpha=float(rng.uniform(-0.9, 3.0)),
                i=float(rng.integers(0, m)), s=float(rng.integers(0, m))))
        else:
            raise ParameterError(f"unknown identity {identity_id!r}")
    return cases
