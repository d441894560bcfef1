"""Gamma and reciprocal gamma on the whole real line (internal).

The summation identities and the Meijer-G residue series need Gamma at
negative non-integer arguments and 1/Gamma with its zeros at the poles.
Reflection is computed with an argument-reduced sin(pi x): evaluating
sin(pi*x) directly loses ~6 digits right where it matters (x near a
negative integer), which is exactly where the residue series is used.
"""

import math


def sinpi(x: float) -> float:
    """sin(pi x) with argument reduction so accuracy holds near integers."""
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return s if n % 2 == 0 else -s


def rgamma(x: float) -> float:
    """1/Gamma(x) for real x; exactly 0 at the poles x = 0, -1, -2, ..."""
    if x > 0.5:
        return math.exp(-math.lgamma(x))
    if x == math.floor(x):
        return 0.0
    return math.exp(math.lgamma(1.0 - x)) * sinpi(x) / math.pi


def gamma(x: float) -> float:
    """Gamma(x) for real x off the poles."""
    if x > 0.5:
        return math.exp(math.lgamma(x))
    if x == math.floor(x):
        raise ZeroDivisionError(f"Gamma pole at {x}")
    return math.pi / (sinpi(x) * math.exp(math.lgamma(1.0 - x)))
