"""Carpet schema."""

from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field

Pair = Tuple[int, int]


class Carpet(BaseModel):
    """Bedford-McMullen carpet: bases plus the chosen digit pairs.

    The first digit (base m1) indexes columns, the second (base m2) rows.
    """

    model_config = ConfigDict(frozen=True)

    m1: int = Field(..., ge=2, description="Horizontal base (number of columns)")
    m2: int = Field(..., ge=2, description="Vertical base (number of rows), m2 >= m1")
    alphabet: Tuple[Pair, ...] = Field(..., description="Chosen digit pairs, sorted")
    column_profile: Tuple[Pair, ...] = Field(
        ..., description="(column index, number of chosen cells) over nonempty columns, ascending"
    )

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def M(self) -> int:
        return len(self.column_profile)

    @property
    def fibres(self) -> Tuple[int, ...]:
        return tuple(count for _, count in self.column_profile)

    @property
    def columns(self) -> Dict[int, Tuple[int, ...]]:
        """Column index -> sorted row digits chosen in that column."""
        out: Dict[int, list] = {}
        for a1, a2 in self.alphabet:
            out.setdefault(a1, []).append(a2)
        return {a1: tuple(rows) for a1, rows in out.items()}

    def index(self, pair: Pair) -> int:
        return self.alphabet.index(tuple(pair))
