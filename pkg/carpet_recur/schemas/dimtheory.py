"""Probability vector and dimension report schemas."""

import math
from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

Pair = Tuple[int, int]


class ProbabilityVector(BaseModel):
    """Weights p_a over a carpet alphabet (same order as ``Carpet.alphabet``)."""

    model_config = ConfigDict(frozen=True)

    alphabet: Tuple[Pair, ...]
    weights: Tuple[float, ...]

    @model_validator(mode="after")
    def check_weights(self):
        if len(self.weights) != len(self.alphabet):
            raise ValueError("one weight per alphabet pair required")
        if any(not math.isfinite(w) for w in self.weights):
            raise ValueError("weights must be finite")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(self.weights)!r}")
        return self

    @property
    def marginals(self) -> Dict[int, float]:
        """Column marginals p_{a1} = sum of p_b over pairs b in column a1."""
        out: Dict[int, float] = {}
        for (a1, _), w in zip(self.alphabet, self.weights):
            out[a1] = out.get(a1, 0.0) + w
        return out

    def weight(self, pair: Pair) -> float:
        try:
            return self.weights[self.alphabet.index(tuple(pair))]
        except ValueError:
            return 0.0


class Entropies(BaseModel):
    model_config = ConfigDict(frozen=True)

    H: float
    H1: float = Field(..., description="Entropy of the column marginals")
    H2: float = Field(..., description="Conditional entropy of rows given columns")


class CaseTag(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    EDGE_NEGATIVE_TAU = "EdgeNegativeTau"
    EDGE_INFINITE_TAU = "EdgeInfiniteTau"


class DimReport(BaseModel):
    """Recurrent-set dimension with the competing expressions that produced it."""

    model_config = ConfigDict(frozen=True)

    value: float
    case: CaseTag
    expressions: Dict[str, float]
    active: str = Field(..., description="Name of the minimizing expression, or 'both' on a tie")
    tau1: str
    tau2: str
    tau_estimated: bool = False


class OptimizationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: ProbabilityVector
    value: float
    uniform_value: float
    method: str = Field(..., description="'exact', 'gradient' or 'grid'")
    restarts: int = 0
    grid_value: Optional[float] = None
