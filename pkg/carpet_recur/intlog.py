"""Integer logarithms of exact rationals.

All boundary decisions (``ceil`` of a logarithm that may be an exact integer) are made by
comparing integer powers, never by rounding a float. Floats are only used for the first guess.
"""

import logging
import math
from fractions import Fraction

import mpmath

from .config import settings

logger = logging.getLogger(__name__)

Rational = int | Fraction


def _check(value: Rational, base: int) -> Fraction:
    if base < 2:
        raise ValueError(f"logarithm base must be >= 2, got {base}")
    value = Fraction(value)
    if value <= 0:
        raise ValueError("logarithm is only defined for values greater than zero")
    return value


def _ln(value: Fraction) -> float:
    # math.log accepts arbitrarily large ints
    return math.log(value.numerator) - math.log(value.denominator)


def ge_log(value: Rational, base: int) -> int:
    """Least integer k with ``base ** k >= value``, i.e. ``ceil(log(value, base))``."""
    value = _check(value, base)
    k = math.ceil(_ln(value) / math.log(base))
    # float guess is off by at most a few units; settle it with exact comparisons
    while Fraction(base) ** k < value:
        k += 1
    while Fraction(base) ** (k - 1) >= value:
        k -= 1
    return k


def le_log(value: Rational, base: int) -> int:
    """Greatest integer k with ``base ** k <= value``, i.e. ``floor(log(value, base))``."""
    value = _check(value, base)
    k = math.floor(_ln(value) / math.log(base))
    while Fraction(base) ** k > value:
        k -= 1
    while Fraction(base) ** (k + 1) <= value:
        k += 1
    return k


def ceil_log(value: Rational, base: int) -> int:
    """Least k >= 0 with ``base ** k >= value``."""
    if value <= 1:
        return 0
    return ge_log(value, base)


def ceil_neg_log(value: Rational, base: int) -> int:
    """``ceil(-log(value, base))``: least integer k with ``base ** k * value >= 1``.

    Negative when value > 1.
    """
    value = _check(value, base)
    return ge_log(1 / value, base)


def approx_height(m1: int, m2: int, n1: int) -> int:
    """``ceil(n1 * log(m1, m2))``: number of base-m2 digits of an n1-th level approximate square."""
    if n1 <= 0:
        return 0
    if m1 == m2:
        return n1
    return ge_log(m1 ** n1, m2)


def ceil_from_bounds(lo: Fraction, hi: Fraction, base: int, value=None) -> int:
    """``ceil(-log(v, base))`` for a value v only known to lie in ``[lo, hi]``.

    When both ends give the same answer it is exact. Otherwise ``value`` (an mpmath number,
    or a zero-argument callable returning one) decides at ``MPMATH_DPS`` digits.
    """
    upper = ceil_neg_log(lo, base)
    lower = ceil_neg_log(hi, base)
    if upper == lower:
        return upper
    if value is None:
        raise ValueError(f"enclosure [{float(lo)!r}, {float(hi)!r}] straddles a power of {base}")
    with mpmath.workdps(settings.MPMATH_DPS):
        v = value() if callable(value) else value
        k = int(mpmath.ceil(-mpmath.log(v, base)))
    logger.warning(
        "ceiling of -log_%d resolved at %d digits, not exactly: %d", base, settings.MPMATH_DPS, k
    )
    return min(max(k, lower), upper)
