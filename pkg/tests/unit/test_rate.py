"""Unit tests for rate functions."""

import math
from fractions import Fraction

import mpmath
import pytest

from carpet_recur.errors import HorizonExceeded, SpecParseError
from carpet_recur.rate import (
    dominating_rate,
    ell,
    has_limit,
    hat_ell,
    parse_rate,
    powexp,
    psi,
    psi_bounds,
    read_rate_table,
    table,
    tau,
)
from carpet_recur.schemas.rate import PowerExp, TauKind, TauValue


class TestPowerExp:
    """Test psi(n) = c n^-gamma m1^(-t n)."""

    def test_exact_when_rational(self):
        """Test exact when rational."""
        r = powexp(2, 2, t=0.5)
        assert psi_bounds(r, 6) == (Fraction(1, 8), Fraction(1, 8))
        assert psi(r, 6) == 0.125

    def test_gamma_and_constant(self):
        """Test gamma and constant."""
        r = powexp(2, 3, t=1, gamma=2, c=3)
        assert psi_bounds(r, 2) == (Fraction(3, 16), Fraction(3, 16))

    def test_irrational_enclosure(self):
        """Test irrational enclosure."""
        r = powexp(2, 3, t=0.3)
        lo, hi = psi_bounds(r, 1)
        assert lo < hi
        with mpmath.workdps(80):
            exact = mpmath.power(2, -mpmath.mpf(3) / 10)
            assert mpmath.mpf(lo.numerator) / lo.denominator <= exact
            assert exact <= mpmath.mpf(hi.numerator) / hi.denominator

    def test_rejects_negative_t(self):
        """Test rejects negative t."""
        with pytest.raises(ValueError):
            powexp(2, 3, t=-1)


class TestDigitCounts:
    """Test ell and hat-ell."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_integer_ell_is_exact(self, n):
        """Test integer ell is exact."""
        r = powexp(2, 3, t=1)
        assert hat_ell(r, 1, n) == n

    def test_torus_half_rate(self, half_rate_torus):
        """Test torus half rate."""
        assert hat_ell(half_rate_torus, 1, 6) == 3
        assert hat_ell(half_rate_torus, 2, 6) == 3

    def test_cantor_half_rate(self):
        """Test Cantor half rate."""
        r = powexp(3, 4, t=0.5)
        # ell_2(6) = 3 log_4 3 = 2.377...
        assert ell(r, 2, 6) == pytest.approx(3 * math.log(3) / math.log(4))
        assert hat_ell(r, 1, 6) == 3
        assert hat_ell(r, 2, 6) == 3

    def test_constant_one(self):
        """Test constant one."""
        r = powexp(3, 4, t=0)
        assert hat_ell(r, 1, 5) == 0
        assert hat_ell(r, 2, 5) == 0

    def test_psi_above_one_gives_negative_count(self):
        """Test psi above one gives negative count."""
        r = powexp(2, 3, t=0, c=4)
        assert hat_ell(r, 1, 1) == -2


class TestTau:
    """Test decay rates."""

    def test_linkage(self):
        """Test linkage."""
        r = powexp(3, 4, t=1)
        assert tau(r, 1).value == 1.0
        assert tau(r, 2).value == pytest.approx(math.log(3) / math.log(4), abs=1e-12)
        assert not tau(r, 1).estimated

    def test_table_proxy(self):
        """Test table proxy."""
        r = table(2, 3, {n: Fraction(1, 2 ** n) for n in range(1, 9)})
        t1 = tau(r, 1)
        assert t1.estimated
        assert t1.value == pytest.approx(1.0)
        assert has_limit(r)

    def test_table_above_one_is_negative(self):
        """Test table above one is negative."""
        r = table(2, 3, {1: 4, 2: 16})
        assert tau(r, 1).kind is TauKind.NEGATIVE

    def test_oscillating_table_has_no_limit(self):
        """Test oscillating table has no limit."""
        values = {n: Fraction(1, 2 ** n if n % 2 else 4 ** n) for n in range(1, 9)}
        r = table(2, 3, values)
        assert not has_limit(r)
        assert tau(r, 1).value == pytest.approx(1.0)
        phi = dominating_rate(r)
        assert phi.family.values == {n: Fraction(1, 2 ** n) for n in range(1, 9)}
        assert has_limit(phi)

    def test_powexp_always_has_limit(self):
        """Test powexp always has limit."""
        r = powexp(2, 3, t=0.5)
        assert has_limit(r)
        assert dominating_rate(r) is r

    def test_horizon(self):
        """Test horizon."""
        r = table(2, 3, {1: Fraction(1, 2)})
        with pytest.raises(HorizonExceeded):
            psi_bounds(r, 2)


class TestTauValue:
    """Test the extended-real tau type."""

    @pytest.mark.parametrize("raw,kind", [
        ("inf", TauKind.INFINITE), (float("inf"), TauKind.INFINITE),
        ("negative", TauKind.NEGATIVE), (-0.5, TauKind.NEGATIVE), ("0.25", TauKind.FINITE),
    ])
    def test_of(self, raw, kind):
        """Test of."""
        assert TauValue.of(raw).kind is kind

    def test_labels(self):
        """Test labels."""
        assert TauValue.of(0.5).label() == "0.5"
        assert TauValue.of("inf").label() == "inf"

    @pytest.mark.parametrize("raw", ["nan", float("nan"), "not-a-number"])
    def test_rejects_nan(self, raw):
        """NaN and unparsable text are not decay rates."""
        with pytest.raises(ValueError):
            TauValue.of(raw)


class TestParseRate:
    """Test the rate spec grammar."""

    def test_powexp(self):
        """Test powexp."""
        r = parse_rate("powexp t=0.5 gamma=1 c=2", 2, 3)
        assert isinstance(r.family, PowerExp)
        assert r.family.t == Fraction(1, 2)
        assert r.family.gamma == 1
        assert r.family.c == 2

    def test_rational_parameter(self):
        """Test rational parameter."""
        assert parse_rate("powexp t=1/3", 2, 3).family.t == Fraction(1, 3)

    @pytest.mark.parametrize("text", [
        "", "powexp", "powexp gamma=1", "powexp t=abc", "powexp t=1 t=2", "powexp t=-1", "poly t=1",
        "table",
    ])
    def test_rejects(self, text):
        """Test rejects."""
        with pytest.raises(SpecParseError):
            parse_rate(text, 2, 3)

    def test_table_file(self, tmp_path):
        """Test table file."""
        path = tmp_path / "psi.csv"
        path.write_text("n,psi\n1,1/2\n2,1/4\n3,1e-1\n")
        r = parse_rate(f"table {path}", 2, 3)
        assert r.family.horizon == 3
        assert psi_bounds(r, 3) == (Fraction(1, 10), Fraction(1, 10))

    def test_table_needs_increasing_n(self, tmp_path):
        """Test table needs increasing n."""
        path = tmp_path / "psi.csv"
        path.write_text("n,psi\n2,1/2\n1,1/4\n")
        with pytest.raises(SpecParseError):
            read_rate_table(path, 2, 3)

    def test_table_header(self, tmp_path):
        """Test table header."""
        path = tmp_path / "psi.csv"
        path.write_text("k,value\n1,1/2\n")
        with pytest.raises(SpecParseError):
            read_rate_table(path, 2, 3)
