"""Digit-level schemas: points, cylinder words and rectangles."""

from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SymbolicPoint(BaseModel):
    """Truncated coding of a point: the cylinder of all its infinite extensions."""

    model_config = ConfigDict(frozen=True)

    m1: int = Field(..., ge=2)
    m2: int = Field(..., ge=2)
    digits1: Tuple[int, ...] = Field(..., description="Base-m1 digits x_1..x_D")
    digits2: Tuple[int, ...] = Field(..., description="Base-m2 digits y_1..y_D")

    @model_validator(mode="after")
    def check_digits(self):
        if len(self.digits1) != len(self.digits2):
            raise ValueError("digit sequences must have equal length")
        if not self.digits1:
            raise ValueError("depth must be at least 1")
        if any(not 0 <= d < self.m1 for d in self.digits1):
            raise ValueError(f"digits1 must lie in [0, {self.m1})")
        if any(not 0 <= d < self.m2 for d in self.digits2):
            raise ValueError(f"digits2 must lie in [0, {self.m2})")
        return self

    @property
    def depth(self) -> int:
        return len(self.digits1)


class CylinderWord(BaseModel):
    """Cylinder prefix; lengths may differ per coordinate (approximate squares)."""

    model_config = ConfigDict(frozen=True)

    m1: int = Field(..., ge=2)
    m2: int = Field(..., ge=2)
    word1: Tuple[int, ...] = ()
    word2: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def check_digits(self):
        if any(not 0 <= d < self.m1 for d in self.word1):
            raise ValueError(f"word1 digits must lie in [0, {self.m1})")
        if any(not 0 <= d < self.m2 for d in self.word2):
            raise ValueError(f"word2 digits must lie in [0, {self.m2})")
        return self

    @property
    def n1(self) -> int:
        return len(self.word1)

    @property
    def n2(self) -> int:
        return len(self.word2)

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(zip(self.word1, self.word2))


class RectKind(str, Enum):
    HALF_OPEN = "half_open"  # [lo, hi) x [lo, hi)
    OPEN = "open"            # (lo, hi) x (lo, hi)


SIDES = frozenset({"x_lo", "x_hi", "y_lo", "y_hi"})


class Rect(BaseModel):
    """Axis-parallel rectangle with exact rational corners."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction
    kind: RectKind = RectKind.HALF_OPEN
    clipped: bool = Field(False, description="Set when the rectangle was cut to the unit square")
    closed_sides: FrozenSet[str] = Field(
        frozenset(), description="Sides of an open rectangle that are closed (subset of x_lo, x_hi, y_lo, y_hi)"
    )

    @model_validator(mode="after")
    def check_bounds(self):
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError("rectangle must have positive width and height")
        if not self.closed_sides <= SIDES:
            raise ValueError(f"closed sides must be among {sorted(SIDES)}")
        return self

    @property
    def width(self) -> Fraction:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> Fraction:
        return self.y_hi - self.y_lo

    def _above(self, v: Fraction, side: str) -> bool:
        lo = getattr(self, side)
        return lo <= v if side in self.closed_sides else lo < v

    def _below(self, v: Fraction, side: str) -> bool:
        hi = getattr(self, side)
        return v <= hi if side in self.closed_sides else v < hi

    def contains(self, x: Fraction, y: Fraction) -> bool:
        if self.kind is RectKind.OPEN:
            return (self._above(x, "x_lo") and self._below(x, "x_hi")
                    and self._above(y, "y_lo") and self._below(y, "y_hi"))
        return self.x_lo <= x < self.x_hi and self.y_lo <= y < self.y_hi

    def within(self, other: "Rect") -> bool:
        """Containment of the closures."""
        return (other.x_lo <= self.x_lo and self.x_hi <= other.x_hi
                and other.y_lo <= self.y_lo and self.y_hi <= other.y_hi)
