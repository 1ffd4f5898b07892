"""Unit tests for point-cloud files and report tables."""

import sys

import numpy as np
import pytest

from carpet_recur.carpet import build_carpet
from carpet_recur.dimtheory import theorem_dimension
from carpet_recur.errors import CloudFormatError
from carpet_recur.io import (
    emit,
    format_cloud,
    format_cover_reports,
    format_dim_reports,
    format_estimate,
    parse_cloud,
    read_cloud,
    write_cloud,
)
from carpet_recur.schemas.boxcount import DimensionEstimate, PointCloud
from carpet_recur.schemas.recur import CoverReport

SMALL = "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2\n010,110\n"


@pytest.fixture
def small_cloud():
    return PointCloud(m1=2, m2=2, digits1=[[0, 1, 0]], digits2=[[1, 1, 0]], seed=7)


class TestCloudFormat:
    """Test the point-cloud CSV format."""

    def test_format(self, small_cloud):
        """Test format."""
        assert format_cloud(small_cloud) == SMALL

    def test_with_coords(self, small_cloud):
        """Test with coords."""
        text = format_cloud(small_cloud, with_coords=True)
        assert text.splitlines()[2:] == ["digits1,digits2,x,y", "010,110,1/4,3/4"]
        assert parse_cloud(text).digits1.tolist() == [[0, 1, 0]]

    def test_parse(self):
        """Test parse."""
        cloud = parse_cloud(SMALL)
        assert (cloud.m1, cloud.m2, cloud.depth, cloud.seed) == (2, 2, 3, 7)
        assert cloud.digits2.tolist() == [[1, 1, 0]]

    def test_base_above_ten(self):
        """Test base above ten."""
        cloud = PointCloud(m1=11, m2=16, digits1=[[10, 0]], digits2=[[15, 9]])
        text = format_cloud(cloud)
        assert text.splitlines()[1] == "2,11,16,"
        assert text.splitlines()[3] == "a0,f9"
        back = parse_cloud(text)
        assert back.seed is None
        assert back.digits2.tolist() == [[15, 9]]

    def test_file_round_trip(self, cantor, tmp_path):
        """Test file round trip."""
        rng = np.random.default_rng(0)
        idx = rng.integers(0, cantor.size, size=(50, 12))
        pairs = np.asarray(cantor.alphabet)[idx]
        cloud = PointCloud(m1=3, m2=4, digits1=pairs[..., 0], digits2=pairs[..., 1], seed=3)
        path = tmp_path / "cloud.csv"
        write_cloud(cloud, path, with_coords=True)
        back = read_cloud(path)
        assert np.array_equal(back.digits1, cloud.digits1)
        assert np.array_equal(back.digits2, cloud.digits2)

    @pytest.mark.parametrize("text", [
        "",
        "depth,m1,m2\n3,2,2\ndigits1,digits2\n010,110\n",
        "depth,m1,m2,seed\n3,2,x,7\ndigits1,digits2\n010,110\n",
        "depth,m1,m2,seed\n3,1,2,7\ndigits1,digits2\n010,110\n",
        "depth,m1,m2,seed\n3,2,2,7\nd1,d2\n010,110\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2\n01,110\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2\n012,110\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2\n0-0,110\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2,x,y\n010,110,1/3,3/4\n",
        "depth,m1,m2,seed\n3,2,2,7\ndigits1,digits2,x,y\n010,110,1/4,abc\n",
    ])
    def test_malformed(self, text):
        """Test malformed."""
        with pytest.raises(CloudFormatError):
            parse_cloud(text)

    def test_read_error_names_the_file(self, tmp_path):
        """Test read error names the file."""
        path = tmp_path / "bad.csv"
        path.write_text("nope\n")
        with pytest.raises(CloudFormatError, match="bad.csv"):
            read_cloud(path)


class TestReports:
    """Test report tables."""

    def test_dim_reports(self, cantor):
        """Test dim reports."""
        text = format_dim_reports([theorem_dimension(cantor, 0.5), theorem_dimension(cantor, "inf")])
        lines = text.splitlines()
        assert lines[0] == "tau1,tau2,case,value,active,tau_estimated"
        assert lines[1].startswith("0.5,")
        assert lines[1].endswith(",false")
        assert ",Case2," in lines[1] or ",Case1," in lines[1]
        assert lines[2] == "inf,inf,EdgeInfiniteTau,0,zero,false"

    def test_cover_reports(self):
        """Test cover reports."""
        rep = CoverReport(n=2, i=1, level=3, exact_count=4, bound=8.0, slack=2.0)
        assert format_cover_reports([rep]) == "n,i,level,exact_count,bound,slack\n2,1,3,4,8,2\n"

    def test_estimate(self):
        """Test estimate."""
        est = DimensionEstimate(levels=(1, 2, 3), counts=(4, 16, 64), slope=2.0, intercept=0.0,
                                r_squared=1.0, corrected_dimension=None)
        assert format_estimate(est).splitlines() == [
            "level,count", "1,4", "2,16", "3,64", "slope,2", "r_squared,1", "corrected_dimension,",
        ]

    def test_emit(self, tmp_path, capsys):
        """Test emit."""
        emit("a,b\n", None, sys.stdout)
        assert capsys.readouterr().out == "a,b\n"
        out = tmp_path / "r.csv"
        emit("a,b\n", out, sys.stdout)
        assert out.read_text() == "a,b\n"

    def test_single_cell_carpet_report(self):
        """Test single cell carpet report."""
        report = theorem_dimension(build_carpet(2, 3, [(1, 1)]), 1)
        assert format_dim_reports([report]).splitlines()[1].split(",")[3] == "0"
