"""Exact digit arithmetic: coding map, shift, cylinders and approximate squares."""

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DepthExceeded, DepthMismatch, ShiftTooDeep
from .intlog import approx_height
from .schemas.symbolic import CylinderWord, Rect, SymbolicPoint


def digits_to_int(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def digits_value(digits: Sequence[int], base: int) -> Fraction:
    """sum_k digits[k] / base**k over k = 1..len(digits)."""
    return Fraction(digits_to_int(digits, base), base ** len(digits))


def coding_point(x: SymbolicPoint) -> Tuple[Fraction, Fraction]:
    return digits_value(x.digits1, x.m1), digits_value(x.digits2, x.m2)


def shift(x: SymbolicPoint, n: int) -> SymbolicPoint:
    """T^n on codings: drop the first n digits of both coordinates."""
    if n < 0:
        raise ValueError("shift must be nonnegative")
    if n >= x.depth:
        raise ShiftTooDeep(f"cannot shift depth-{x.depth} point by {n}")
    return SymbolicPoint(m1=x.m1, m2=x.m2, digits1=x.digits1[n:], digits2=x.digits2[n:])


def prefix(x: SymbolicPoint, n1: int, n2: int | None = None) -> CylinderWord:
    n2 = n1 if n2 is None else n2
    if n1 > x.depth or n2 > x.depth:
        raise DepthExceeded(f"prefix ({n1}, {n2}) deeper than point depth {x.depth}")
    return CylinderWord(m1=x.m1, m2=x.m2, word1=x.digits1[:n1], word2=x.digits2[:n2])


def approx_square(x: SymbolicPoint, n1: int) -> CylinderWord:
    """The n1-th level approximate square containing x."""
    if n1 < 0:
        raise ValueError("level must be nonnegative")
    return prefix(x, n1, approx_height(x.m1, x.m2, n1))


def cylinder_rect(w: CylinderWord) -> Rect:
    x_lo = digits_value(w.word1, w.m1)
    y_lo = digits_value(w.word2, w.m2)
    return Rect(
        x_lo=x_lo,
        x_hi=x_lo + Fraction(1, w.m1 ** w.n1),
        y_lo=y_lo,
        y_hi=y_lo + Fraction(1, w.m2 ** w.n2),
    )


def coord_distance_bounds(x: SymbolicPoint, y: SymbolicPoint, coord: int) -> Tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of |x_coord - y_coord| over all infinite extensions of x and y."""
    if (x.m1, x.m2) != (y.m1, y.m2):
        raise DepthMismatch("points have different bases")
    if x.depth != y.depth:
        raise DepthMismatch(f"depths differ: {x.depth} vs {y.depth}")
    if coord == 1:
        a, b, m = digits_value(x.digits1, x.m1), digits_value(y.digits1, y.m1), x.m1
    elif coord == 2:
        a, b, m = digits_value(x.digits2, x.m2), digits_value(y.digits2, y.m2), x.m2
    else:
        raise ValueError("coord must be 1 or 2")
    # each extension adds a tail in [0, m^-D]
    tail = Fraction(1, m ** x.depth)
    d = abs(a - b)
    return max(Fraction(0), d - tail), d + tail
