"""Unit tests for carpet and cloud rasters."""

import numpy as np
import pytest

from carpet_recur.carpet import build_carpet
from carpet_recur.errors import BudgetExceeded
from carpet_recur.render import BLACK, WHITE, render_carpet, render_cloud, write_pgm
from carpet_recur.schemas.boxcount import PointCloud


class TestRenderCarpet:
    """Test carpet rasters."""

    def test_full_alphabet_is_black(self, torus):
        """Test full alphabet is black."""
        image = render_carpet(torus, 8)
        assert image.shape == (8, 8)
        assert (image == BLACK).all()

    def test_single_cell(self):
        """Test single cell."""
        image = render_carpet(build_carpet(2, 3, [(1, 1)]), 4)
        # x in [3/4, 1), y in [4/9, 5/9) straddles y = 1/2: column 3, middle two rows
        assert (image == BLACK).sum() == 2
        assert image[2, 3] == BLACK
        assert image[1, 3] == BLACK

    def test_covers_every_sampled_pixel(self, cantor):
        """Test covers every sampled pixel."""
        rng = np.random.default_rng(3)
        pairs = np.asarray(cantor.alphabet)
        picks = rng.integers(0, cantor.size, size=(2000, 8))
        cloud = PointCloud(m1=3, m2=4, digits1=pairs[picks, 0], digits2=pairs[picks, 1])
        for resolution in (9, 10, 16, 25):
            carpet = render_carpet(cantor, resolution)
            points = render_cloud(cloud, resolution)
            assert (carpet[points == BLACK] == BLACK).all()

    def test_cantor_columns_and_rows(self, cantor):
        """Test Cantor columns and rows."""
        image = render_carpet(cantor, 9)
        black_columns = set(np.flatnonzero((image == BLACK).any(axis=0)).tolist())
        assert black_columns == {0, 2, 6, 8}
        assert set(np.flatnonzero(image[0] == BLACK).tolist()) == {0, 2, 6, 8}
        assert set(np.flatnonzero(image[-1] == BLACK).tolist()) == {0, 2, 6, 8}

    def test_budget(self, cantor):
        """Test budget."""
        with pytest.raises(BudgetExceeded):
            render_carpet(cantor, 729, budget=100)

    def test_bad_resolution(self, torus):
        """Test bad resolution."""
        with pytest.raises(ValueError):
            render_carpet(torus, 0)


class TestRenderCloud:
    """Test point-cloud rasters."""

    def test_one_point(self):
        """Test one point."""
        cloud = PointCloud(m1=2, m2=3, digits1=[[1]], digits2=[[2]])
        image = render_cloud(cloud, 2)
        assert image.tolist() == [[WHITE, BLACK], [WHITE, WHITE]]

    def test_origin_is_bottom_left(self):
        """Test origin is bottom left."""
        cloud = PointCloud(m1=2, m2=2, digits1=[[0, 0]], digits2=[[0, 0]])
        image = render_cloud(cloud, 4)
        assert image[3, 0] == BLACK
        assert (image == BLACK).sum() == 1


class TestWritePgm:
    """Test binary PGM output."""

    def test_header_and_size(self, cantor, tmp_path):
        """Test header and size."""
        path = tmp_path / "cantor.pgm"
        write_pgm(render_carpet(cantor, 27), path)
        data = path.read_bytes()
        header = b"P5\n27 27\n255\n"
        assert data.startswith(header)
        assert len(data) == len(header) + 27 * 27
        assert set(data[len(header):]) <= {BLACK, WHITE}
