"""Shared fixtures."""

from pathlib import Path

import pytest

from carpet_recur.carpet import build_carpet, full_carpet
from carpet_recur.rate import powexp

FIXTURES = Path(__file__).parent / "fixtures"

CANTOR_PAIRS = [(0, 0), (0, 1), (0, 3), (2, 0), (2, 1), (2, 3)]
CANTOR_DIMENSION = 1.4234110039320356  # log_3 2 + log_4 3


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def cantor():
    return build_carpet(3, 4, CANTOR_PAIRS)


@pytest.fixture
def torus():
    return full_carpet(2, 2)


@pytest.fixture
def two_three():
    """Uniform-fibre (2,3) carpet, two pairs per column."""
    return build_carpet(2, 3, [(0, 0), (0, 2), (1, 0), (1, 1)])


@pytest.fixture
def nonuniform():
    return build_carpet(2, 3, [(0, 0), (0, 2), (1, 1)])


@pytest.fixture
def half_rate_torus():
    return powexp(2, 2, t=0.5)
