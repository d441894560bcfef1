"""Log-gamma, digamma and trigamma on the positive reals.

The moment formulas only ever evaluate polygamma functions at integers and
half-integers, where finite closed sums are exact:

    psi0(l)       = -gamma + sum_{k=1}^{l-1} 1/k
    psi0(l + 1/2) = -gamma - 2 ln 2 + 2 sum_{k=0}^{l-1} 1/(2k+1)
    psi1(l)       = pi^2/6 - sum_{k=1}^{l-1} 1/k^2
    psi1(l + 1/2) = pi^2/2 - 4 sum_{k=0}^{l-1} 1/(2k+1)^2

Those fast paths are keyed by exact representability (2x an integer), not by
a tolerance, so they contribute no series error to downstream checks.  All
other positive arguments go through an upward recurrence shift to x >= 10
followed by the Stirling-type asymptotic series (log-gamma uses a Lanczos
approximation below the shift point instead, which avoids the cancellation
the shifted Stirling form suffers near the zeros of log-gamma).
"""

import math

from .errors import DomainError

EULER_GAMMA = 0.5772156649015328606065120900824024
LN2 = 0.6931471805599453094172321214581766
PI_SQ_6 = math.pi * math.pi / 6.0
PI_SQ_2 = math.pi * math.pi / 2.0

# Largest l for which the exact finite sums are used; beyond this the
# asymptotic path is both faster and still well within tolerance.
_EXACT_SUM_CUTOFF = 10_000_000

_SHIFT_POINT = 10.0

# B_2n / (2n (2n-1)) for the log-gamma Stirling series, n = 1..7.
_LG_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)

# B_2n for the digamma/trigamma series, n = 1..7.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

# Lanczos g=7, n=9 coefficients (Godfrey's set).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def half_integer_kind(x: float):
    """Classify x as ('integer', l), ('half_integer', l) with x = l + 1/2,
    or ('general', None).  Exact representability check, no tolerance."""
    two_x = 2.0 * x
    if two_x != math.floor(two_x):
        return "general", None
    n = int(two_x)
    if n % 2 == 0:
        return "integer", n // 2
    return "half_integer", (n - 1) // 2


def _check_positive(x: float, name: str) -> float:
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"{name} requires a positive finite argument, got {x!r}")
    return x


def _lanczos_log_gamma(x: float) -> float:
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i - 1.0)
    t = x + _LANCZOS_G - 0.5
    return 0.5 * math.log(2.0 * math.pi) + (x - 0.5) * math.log(t) - t + math.log(acc)


def _stirling_log_gamma(y: float) -> float:
    out = (y - 0.5) * math.log(y) - y + 0.5 * math.log(2.0 * math.pi)
    y2 = y * y
    p = y
    for c in _LG_STIRLING:
        out += c / p
        p *= y2
    return out


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0, accurate to ~1e-14 relative."""
    x = _check_positive(x, "log_gamma")
    kind, l = half_integer_kind(x)
    if kind == "integer" and l <= _EXACT_SUM_CUTOFF:
        return math.fsum(math.log(k) for k in range(2, l))
    if kind == "half_integer" and l <= _EXACT_SUM_CUTOFF:
        # Gamma(l + 1/2) = Gamma(1/2) * prod_{k=1}^{l} (k - 1/2)
        return 0.5 * math.log(math.pi) + math.fsum(
            math.log(k - 0.5) for k in range(1, l + 1)
        )
    if x >= _SHIFT_POINT:
        return _stirling_log_gamma(x)
    return _lanczos_log_gamma(x)


def digamma(x: float) -> float:
    """psi0(x) for x > 0; exact finite sums at integers and half-integers."""
    x = _check_positive(x, "digamma")
    kind, l = half_integer_kind(x)
    if kind == "integer" and l <= _EXACT_SUM_CUTOFF:
        return -EULER_GAMMA + math.fsum(1.0 / k for k in range(1, l))
    if kind == "half_integer" and l <= _EXACT_SUM_CUTOFF:
        return -EULER_GAMMA - 2.0 * LN2 + 2.0 * math.fsum(
            1.0 / (2 * k + 1) for k in range(l)
        )
    shift = 0.0
    y = x
    while y < _SHIFT_POINT:
        shift -= 1.0 / y
        y += 1.0
    out = math.log(y) - 0.5 / y
    y2 = y * y
    p = y2
    for n, b in enumerate(_BERNOULLI, start=1):
        out -= b / (2 * n * p)
        p *= y2
    return out + shift


def trigamma(x: float) -> float:
    """psi1(x) for x > 0; exact finite sums at integers and half-integers."""
    x = _check_positive(x, "trigamma")
    kind, l = half_integer_kind(x)
    if kind == "integer" and l <= _EXACT_SUM_CUTOFF:
        return PI_SQ_6 - math.fsum(1.0 / (k * k) for k in range(1, l))
    if kind == "half_integer" and l <= _EXACT_SUM_CUTOFF:
        return PI_SQ_2 - 4.0 * math.fsum(
            1.0 / ((2 * k + 1) * (2 * k + 1)) for k in range(l)
        )
    shift = 0.0
    y = x
    while y < _SHIFT_POINT:
        shift += 1.0 / (y * y)
        y += 1.0
    out = 1.0 / y + 0.5 / (y * y)
    y2 = y * y
    p = y * y2
    for b in _BERNOULLI:
        out += b / p
        p *= y2
    return out + shift
