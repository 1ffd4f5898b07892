"""Point cloud and dimension estimate schemas."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .symbolic import SymbolicPoint


class PointCloud(BaseModel):
    """Finite multiset of truncated points with shared bases and depth.

    Digits are held as two (count, depth) int16 matrices; ``points()`` materialises
    ``SymbolicPoint`` objects on demand.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m1: int = Field(..., ge=2)
    m2: int = Field(..., ge=2)
    digits1: np.ndarray
    digits2: np.ndarray
    seed: Optional[int] = None
    schedule: Tuple[int, ...] = ()
    rate: Optional[str] = None

    @field_validator("digits1", "digits2", mode="before")
    @classmethod
    def as_matrix(cls, v):
        return np.asarray(v, dtype=np.int16)

    @model_validator(mode="after")
    def check_shape(self):
        if self.digits1.ndim != 2 or self.digits1.shape != self.digits2.shape:
            raise ValueError("digit matrices must be 2-d with equal shapes")
        if self.digits1.shape[0] == 0 or self.digits1.shape[1] == 0:
            raise ValueError("point cloud must be nonempty with depth >= 1")
        if self.digits1.min() < 0 or self.digits1.max() >= self.m1:
            raise ValueError(f"digits1 must lie in [0, {self.m1})")
        if self.digits2.min() < 0 or self.digits2.max() >= self.m2:
            raise ValueError(f"digits2 must lie in [0, {self.m2})")
        return self

    @property
    def size(self) -> int:
        return int(self.digits1.shape[0])

    @property
    def depth(self) -> int:
        return int(self.digits1.shape[1])

    def points(self) -> List[SymbolicPoint]:
        return [
            SymbolicPoint(m1=self.m1, m2=self.m2, digits1=tuple(int(d) for d in r1),
                          digits2=tuple(int(d) for d in r2))
            for r1, r2 in zip(self.digits1, self.digits2)
        ]

    def integer_coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Numerators X, Y (object arrays of Python ints) with x = X / m1**D, y = Y / m2**D."""
        x = np.zeros(self.size, dtype=object)
        y = np.zeros(self.size, dtype=object)
        for k in range(self.depth):
            x = x * self.m1 + self.digits1[:, k].astype(object)
            y = y * self.m2 + self.digits2[:, k].astype(object)
        return x, y

    @classmethod
    def from_points(cls, points: List[SymbolicPoint], **provenance) -> "PointCloud":
        if not points:
            raise ValueError("point cloud must be nonempty")
        first = points[0]
        return cls(
            m1=first.m1,
            m2=first.m2,
            digits1=np.array([p.digits1 for p in points]),
            digits2=np.array([p.digits2 for p in points]),
            **provenance,
        )


class DimensionEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    levels: Tuple[int, ...]
    counts: Tuple[int, ...]
    slope: float
    intercept: float
    r_squared: float
    corrected_dimension: Optional[float] = Field(
        None, description="Regression on (level, ceil(level*log_m2 m1)); None when rank deficient"
    )
    saturated: bool = False
