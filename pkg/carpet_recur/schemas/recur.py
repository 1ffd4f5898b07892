"""Recurrence and covering schemas."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Verdict(str, Enum):
    """Outcome of a recurrence test on a truncated point."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class RecurrenceQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    L1n: int = Field(..., ge=0, description="Covering level for the base-m1 estimate")
    L2n: int = Field(..., ge=0, description="Covering level for the base-m2 estimate")

    def level(self, i: int) -> int:
        return self.L1n if i == 1 else self.L2n


class CoverReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    i: int
    level: int
    exact_count: int
    bound: float
    slack: float = Field(..., description="bound / exact_count")

    @property
    def violated(self) -> bool:
        return self.exact_count > self.bound
