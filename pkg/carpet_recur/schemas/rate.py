"""Rate function schemas."""

import math
from enum import Enum
from fractions import Fraction
from typing import Dict, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def to_fraction(value) -> Fraction:
    """Exact rational from ints, strings ("1/3", "1e-5") or floats (via their repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


class PowerExp(BaseModel):
    """psi(n) = c * n**(-gamma) * m1**(-t*n)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: Literal["powexp"] = "powexp"
    t: Fraction = Field(..., description="Exponential rate in base m1, t >= 0")
    gamma: Fraction = Field(Fraction(0), description="Polynomial exponent")
    c: Fraction = Field(Fraction(1), description="Positive constant")

    @field_validator("t", "gamma", "c", mode="before")
    @classmethod
    def coerce_rational(cls, v):
        return to_fraction(v)

    @model_validator(mode="after")
    def check_params(self):
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if self.c <= 0:
            raise ValueError("c must be > 0")
        return self


class Table(BaseModel):
    """Tabulated psi(n) for 1 <= n <= horizon."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: Literal["table"] = "table"
    values: Dict[int, Fraction]
    horizon: int = Field(..., ge=1)

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v):
        return {int(n): to_fraction(psi) for n, psi in dict(v).items()}

    @model_validator(mode="after")
    def check_values(self):
        if not self.values:
            raise ValueError("table must not be empty")
        if any(n < 1 for n in self.values):
            raise ValueError("table indices must be >= 1")
        if any(psi <= 0 for psi in self.values.values()):
            raise ValueError("table values must be > 0")
        if max(self.values) > self.horizon:
            raise ValueError("table index beyond horizon")
        return self


class RateFunction(BaseModel):
    """A rate psi attached to the carpet bases it is measured in."""

    model_config = ConfigDict(frozen=True)

    m1: int = Field(..., ge=2)
    m2: int = Field(..., ge=2)
    family: Union[PowerExp, Table] = Field(..., discriminator="family")

    def describe(self) -> str:
        f = self.family
        if isinstance(f, PowerExp):
            return f"powexp t={f.t} gamma={f.gamma} c={f.c}"
        return f"table horizon={f.horizon}"


class TauKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    NEGATIVE = "negative"


class TauValue(BaseModel):
    """Extended-real decay rate; infinite and negative rates are tags, never sentinel floats."""

    model_config = ConfigDict(frozen=True)

    kind: TauKind = TauKind.FINITE
    value: Optional[float] = None
    estimated: bool = Field(False, description="Numeric liminf proxy rather than closed form")

    @model_validator(mode="after")
    def check_value(self):
        if self.kind is TauKind.FINITE and (self.value is None or self.value < 0):
            raise ValueError("finite tau needs a value >= 0")
        return self

    @classmethod
    def of(cls, value) -> "TauValue":
        """Accept a TauValue, a float (inf and negatives become tags) or 'inf'/'negative'."""
        if isinstance(value, TauValue):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "+inf"):
                return cls(kind=TauKind.INFINITE)
            if text == "negative":
                return cls(kind=TauKind.NEGATIVE)
            value = float(text)
        value = float(value)
        if math.isnan(value):
            raise ValueError("tau must not be NaN")
        if value == float("inf"):
            return cls(kind=TauKind.INFINITE)
        if value < 0:
            return cls(kind=TauKind.NEGATIVE, value=value)
        return cls(value=value)

    def label(self) -> str:
        if self.kind is TauKind.FINITE:
            return "%.17g" % self.value
        return "inf" if self.kind is TauKind.INFINITE else "negative"
