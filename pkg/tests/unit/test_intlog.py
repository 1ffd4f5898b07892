"""Unit tests for integer logarithms."""

from fractions import Fraction

import mpmath
import pytest

from carpet_recur.intlog import (
    approx_height,
    ceil_from_bounds,
    ceil_log,
    ceil_neg_log,
    ge_log,
    le_log,
)


class TestIntegerLogs:
    """Test exact ceiling and floor logarithms."""

    @pytest.mark.parametrize("value,base,expected", [
        (1, 2, 0), (2, 2, 1), (3, 2, 2), (8, 2, 3), (9, 2, 4),
        (3 ** 40, 3, 40), (3 ** 40 + 1, 3, 41), (Fraction(1, 8), 2, -3), (Fraction(1, 9), 2, -3),
    ])
    def test_ge_log(self, value, base, expected):
        """Test ge log."""
        assert ge_log(value, base) == expected

    @pytest.mark.parametrize("value,base,expected", [
        (1, 2, 0), (7, 2, 2), (8, 2, 3), (10 ** 30, 10, 30), (10 ** 30 - 1, 10, 29),
    ])
    def test_le_log(self, value, base, expected):
        """Test le log."""
        assert le_log(value, base) == expected

    def test_ceil_log_clamps_small_values(self):
        """Test ceil log clamps small values."""
        assert ceil_log(1, 3) == 0
        assert ceil_log(729, 3) == 6
        assert ceil_log(730, 3) == 7

    def test_rejects_nonpositive(self):
        """Test rejects nonpositive."""
        with pytest.raises(ValueError):
            ge_log(0, 2)
        with pytest.raises(ValueError):
            ge_log(5, 1)


class TestCeilNegLog:
    """Test ceil(-log) at exact powers."""

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_exact_powers(self, k):
        """Test exact powers."""
        assert ceil_neg_log(Fraction(1, 2 ** k), 2) == k

    def test_just_above_power(self):
        """Test just above power."""
        assert ceil_neg_log(Fraction(1, 8) + Fraction(1, 10 ** 20), 2) == 3

    def test_just_below_power(self):
        """Test just below power."""
        assert ceil_neg_log(Fraction(1, 8) - Fraction(1, 10 ** 20), 2) == 4

    def test_negative_when_above_one(self):
        """Test negative when above one."""
        assert ceil_neg_log(4, 2) == -2


class TestApproxHeight:
    """Test ceil(n1 * log_m2 m1)."""

    def test_cantor_heights(self):
        """Test Cantor heights."""
        # log_4 3 = 0.792...
        assert [approx_height(3, 4, n) for n in range(1, 7)] == [1, 2, 3, 4, 4, 5]

    def test_equal_bases(self):
        """Test equal bases."""
        assert approx_height(2, 2, 7) == 7

    def test_power_bases_are_exact(self):
        """Test power bases are exact."""
        # log_8 2 = 1/3 exactly
        assert approx_height(2, 8, 3) == 1
        assert approx_height(2, 8, 4) == 2

    def test_zero_level(self):
        """Test zero level."""
        assert approx_height(3, 4, 0) == 0


class TestCeilFromBounds:
    """Test enclosures of irrational values."""

    def test_agreeing_bounds(self):
        """Test agreeing bounds."""
        assert ceil_from_bounds(Fraction(3, 10), Fraction(31, 100), 2) == 2

    def test_straddling_bounds_use_value(self):
        """Test straddling bounds use value."""
        lo, hi = Fraction(1, 4) - Fraction(1, 10 ** 30), Fraction(1, 4) + Fraction(1, 10 ** 30)
        assert ceil_from_bounds(lo, hi, 2, value=mpmath.mpf("0.26")) == 2
        assert ceil_from_bounds(lo, hi, 2, value=lambda: mpmath.mpf("0.24")) == 3

    def test_straddling_without_value(self):
        """Test straddling without value."""
        lo, hi = Fraction(1, 4) - Fraction(1, 10 ** 30), Fraction(1, 4) + Fraction(1, 10 ** 30)
        with pytest.raises(ValueError):
            ceil_from_bounds(lo, hi, 2)
