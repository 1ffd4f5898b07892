"""Sampling schedule and configuration schemas."""

from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .carpet import Carpet
from .dimtheory import ProbabilityVector
from .rate import RateFunction


class CopyWindow(BaseModel):
    """Digit constraints after a scheduled time n.

    Positions n+1..n+copy_both repeat positions 1..copy_both in both coordinates;
    positions n+copy_both+1..n+copy_column repeat only the column digit.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    copy_both: int = Field(..., ge=0, description="hat-ell_2(n), clamped at 0")
    copy_column: int = Field(..., ge=0, description="hat-ell_1(n), clamped at 0")

    @property
    def end(self) -> int:
        return self.n + self.copy_column


class Schedule(BaseModel):
    model_config = ConfigDict(frozen=True)

    windows: Tuple[CopyWindow, ...]
    first: int = Field(..., ge=1)
    growth_margin: int = Field(..., ge=2)
    target_depth: int

    @model_validator(mode="after")
    def check_growth(self):
        total = 0
        for i, (cur, nxt) in enumerate(zip(self.windows, self.windows[1:]), start=1):
            total += cur.n
            if (2 ** i) * total * self.growth_margin > nxt.n:
                raise ValueError(f"schedule grows too slowly at n_{i + 1} = {nxt.n}")
            if cur.end > nxt.n:
                raise ValueError("copy windows overlap")
        return self

    @property
    def times(self) -> Tuple[int, ...]:
        return tuple(w.n for w in self.windows)


class SampleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    carpet: Carpet
    p: ProbabilityVector
    rate: RateFunction
    schedule: Schedule
    depth: int = Field(..., ge=1)
    seed: int = 0
    label: Optional[str] = None
