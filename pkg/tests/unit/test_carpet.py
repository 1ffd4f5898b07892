"""Unit tests for carpet construction, spec parsing and classical dimensions."""

import math

import numpy as np
import pytest

from carpet_recur.carpet import (
    box_dimension,
    build_carpet,
    format_carpet_spec,
    full_carpet,
    hausdorff_dimension,
    is_uniform_fibre,
    load_carpet,
    parse_carpet_spec,
    uniform_fibre,
)
from carpet_recur.errors import (
    BadBases,
    DigitOutOfRange,
    DuplicatePair,
    EmptyAlphabet,
    NonUniformFibre,
    SpecParseError,
)
from tests.conftest import CANTOR_DIMENSION


class TestBuildCarpet:
    """Test alphabet validation."""

    def test_alphabet_is_sorted(self):
        """Test alphabet is sorted."""
        c = build_carpet(2, 3, [(1, 1), (0, 2), (0, 0)])
        assert c.alphabet == ((0, 0), (0, 2), (1, 1))
        assert c.column_profile == ((0, 2), (1, 1))

    def test_cantor_profile(self, cantor):
        """Test Cantor profile."""
        assert cantor.M == 2
        assert cantor.fibres == (3, 3)
        assert cantor.columns == {0: (0, 1, 3), 2: (0, 1, 3)}

    def test_digit_out_of_range(self):
        """Test digit out of range."""
        with pytest.raises(DigitOutOfRange):
            build_carpet(2, 3, [(2, 0)])

    def test_duplicate_pair(self):
        """Test duplicate pair."""
        with pytest.raises(DuplicatePair):
            build_carpet(2, 3, [(0, 0), (0, 0)])

    def test_empty_alphabet(self):
        """Test empty alphabet."""
        with pytest.raises(EmptyAlphabet):
            build_carpet(2, 3, [])

    def test_bases_must_be_ordered(self):
        """Test bases must be ordered."""
        with pytest.raises(BadBases):
            build_carpet(4, 3, [(0, 0)])
        with pytest.raises(BadBases):
            build_carpet(1, 3, [(0, 0)])

    def test_carpet_is_immutable(self, cantor):
        """Test carpet is immutable."""
        with pytest.raises(Exception):
            cantor.m1 = 5


class TestParseCarpetSpec:
    """Test the carpet spec format."""

    def test_parse_with_comments(self):
        """Test parse with comments."""
        c = parse_carpet_spec("# header\nbases 3 4  # bases\n\n0 0\n2 3\n")
        assert (c.m1, c.m2) == (3, 4)
        assert c.alphabet == ((0, 0), (2, 3))

    def test_format_round_trip(self, cantor):
        """Test format round trip."""
        assert parse_carpet_spec(format_carpet_spec(cantor)) == cantor

    def test_missing_bases(self):
        """Test missing bases."""
        with pytest.raises(SpecParseError):
            parse_carpet_spec("0 0\n")

    def test_error_carries_line_number(self):
        """Test error carries line number."""
        with pytest.raises(SpecParseError) as exc:
            parse_carpet_spec("bases 2 3\n0 0\n1 x\n")
        assert exc.value.line == 3
        assert str(exc.value).startswith("line 3:")

    def test_wrong_field_count(self):
        """Test wrong field count."""
        with pytest.raises(SpecParseError):
            parse_carpet_spec("bases 2 3\n0 0 1\n")

    def test_load_fixture(self, fixtures_dir, cantor):
        """Test load fixture."""
        assert load_carpet(fixtures_dir / "cantor.carpet") == cantor

    def test_parse_errors_are_value_errors(self):
        """Test parse errors are value errors."""
        with pytest.raises(ValueError):
            parse_carpet_spec("bases two 3\n")


class TestDimensions:
    """Test box and Hausdorff dimensions."""

    def test_cantor_dimensions(self, cantor):
        """Test Cantor dimensions."""
        assert box_dimension(cantor) == pytest.approx(CANTOR_DIMENSION, abs=1e-9)
        assert hausdorff_dimension(cantor) == pytest.approx(CANTOR_DIMENSION, abs=1e-9)

    def test_full_square(self):
        """Test full square."""
        c = full_carpet(2, 2)
        assert box_dimension(c) == pytest.approx(2.0)
        assert hausdorff_dimension(c) == pytest.approx(2.0)

    def test_nonuniform_hausdorff_below_box(self, nonuniform):
        """Test nonuniform hausdorff below box."""
        theta = math.log(2) / math.log(3)
        expected = math.log(2 ** theta + 1) / math.log(2)
        assert hausdorff_dimension(nonuniform) == pytest.approx(expected)
        assert hausdorff_dimension(nonuniform) < box_dimension(nonuniform)

    def test_single_pair(self):
        """Test single pair."""
        c = build_carpet(2, 3, [(1, 2)])
        assert box_dimension(c) == 0.0
        assert hausdorff_dimension(c) == 0.0

    def test_hausdorff_below_box_on_random_alphabets(self):
        """Test Hausdorff dimension is at most box dimension, with equality iff fibres are uniform."""
        rng = np.random.default_rng(19)
        for _ in range(500):
            m1 = int(rng.integers(2, 6))
            m2 = int(rng.integers(m1 + 1, 8))
            cells = [(a1, a2) for a1 in range(m1) for a2 in range(m2)]
            size = int(rng.integers(1, len(cells) + 1))
            chosen = rng.choice(len(cells), size=size, replace=False)
            c = build_carpet(m1, m2, [cells[k] for k in chosen])
            dim_h, dim_b = hausdorff_dimension(c), box_dimension(c)
            assert dim_h <= dim_b + 1e-12
            assert math.isclose(dim_h, dim_b, abs_tol=1e-9) == is_uniform_fibre(c)

    def test_equal_bases_always_agree(self):
        """Test m1 = m2 makes the two dimensions coincide for any alphabet."""
        c = build_carpet(3, 3, [(0, 0), (0, 1), (0, 2), (2, 1)])
        assert not is_uniform_fibre(c)
        assert hausdorff_dimension(c) == pytest.approx(box_dimension(c))


class TestUniformFibre:
    """Test the uniform-fibre hypothesis."""

    def test_uniform(self, cantor):
        """Test uniform."""
        assert is_uniform_fibre(cantor)
        assert uniform_fibre(cantor) == (2, 3)

    def test_nonuniform_reports_profile(self, nonuniform):
        """Test nonuniform reports profile."""
        assert not is_uniform_fibre(nonuniform)
        with pytest.raises(NonUniformFibre) as exc:
            uniform_fibre(nonuniform)
        assert "0:2 1:1" in str(exc.value)
        assert exc.value.exit_code == 3
