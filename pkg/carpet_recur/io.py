"""CSV persistence: point clouds and report tables.

Point-cloud file::

    depth,m1,m2,seed
    9,2,2,7
    digits1,digits2
    010011010,110100110
    ...

Digits are written in base m (``0-9a-z``, so m <= 36). With ``with_coords`` two more
columns ``x,y`` carry the exact rationals coded by the truncated digits.
Reals in report tables use 17 significant digits.
"""

import io
import logging
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, TextIO

import numpy as np
import pandas as pd

from .errors import CloudFormatError
from .schemas.boxcount import DimensionEstimate, PointCloud
from .schemas.dimtheory import DimReport
from .schemas.recur import CoverReport

logger = logging.getLogger(__name__)

DIGITS = b"0123456789abcdefghijklmnopqrstuvwxyz"
FLOAT_FORMAT = "%.17g"
CLOUD_HEADER = "depth,m1,m2,seed"

_LOOKUP = np.full(256, -1, dtype=np.int16)
_LOOKUP[np.frombuffer(DIGITS, dtype=np.uint8)] = np.arange(len(DIGITS), dtype=np.int16)


def _real(v: float) -> str:
    return FLOAT_FORMAT % v


def _digit_strings(digits: np.ndarray) -> np.ndarray:
    chars = np.frombuffer(DIGITS, dtype=np.uint8)[digits]
    depth = digits.shape[1]
    return np.ascontiguousarray(chars).view(f"S{depth}").ravel().astype(str)


def _parse_digits(column: pd.Series, depth: int, base: int, name: str) -> np.ndarray:
    if (column.str.len() != depth).any():
        bad = int(np.flatnonzero((column.str.len() != depth).to_numpy())[0])
        raise CloudFormatError(f"{name} row {bad + 1}: expected {depth} digits")
    try:
        raw = np.array(column.tolist(), dtype=f"S{depth}")
    except UnicodeEncodeError as e:
        raise CloudFormatError(f"{name}: non-ASCII digit") from e
    digits = _LOOKUP[raw.view(np.uint8).reshape(len(column), depth)]
    bad_rows = np.flatnonzero(((digits < 0) | (digits >= base)).any(axis=1))
    if bad_rows.size:
        raise CloudFormatError(f"{name} row {int(bad_rows[0]) + 1}: digit outside base {base}")
    return digits


# -- point clouds ---------------------------------------------------------------------

def format_cloud(cloud: PointCloud, with_coords: bool = False) -> str:
    if max(cloud.m1, cloud.m2) > len(DIGITS):
        raise CloudFormatError(f"bases above {len(DIGITS)} have no digit-string form")
    seed = "" if cloud.seed is None else str(cloud.seed)
    frame = pd.DataFrame({
        "digits1": _digit_strings(cloud.digits1),
        "digits2": _digit_strings(cloud.digits2),
    })
    if with_coords:
        X, Y = cloud.integer_coordinates()
        dx, dy = cloud.m1 ** cloud.depth, cloud.m2 ** cloud.depth
        frame["x"] = [str(Fraction(v, dx)) for v in X]
        frame["y"] = [str(Fraction(v, dy)) for v in Y]
    out = io.StringIO()
    out.write(f"{CLOUD_HEADER}\n{cloud.depth},{cloud.m1},{cloud.m2},{seed}\n")
    frame.to_csv(out, index=False, lineterminator="\n")
    return out.getvalue()


def parse_cloud(text: str) -> PointCloud:
    lines = text.split("\n", 2)
    if len(lines) < 3 or lines[0].strip() != CLOUD_HEADER:
        raise CloudFormatError(f"first line must be '{CLOUD_HEADER}'")
    fields = lines[1].strip().split(",")
    if len(fields) != 4:
        raise CloudFormatError("metadata line must have 4 fields")
    try:
        depth, m1, m2 = (int(v) for v in fields[:3])
        seed = int(fields[3]) if fields[3] else None
    except ValueError as e:
        raise CloudFormatError(f"bad metadata: {e}") from e
    if depth < 1 or not 2 <= m1 <= len(DIGITS) or not 2 <= m2 <= len(DIGITS):
        raise CloudFormatError(f"bad metadata depth={depth} m1={m1} m2={m2}")

    try:
        frame = pd.read_csv(io.StringIO(lines[2]), dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise CloudFormatError(str(e)) from e
    if list(frame.columns) not in (["digits1", "digits2"], ["digits1", "digits2", "x", "y"]):
        raise CloudFormatError("columns must be 'digits1,digits2' or 'digits1,digits2,x,y'")
    if frame.empty:
        raise CloudFormatError("point cloud has no rows")

    digits1 = _parse_digits(frame["digits1"], depth, m1, "digits1")
    digits2 = _parse_digits(frame["digits2"], depth, m2, "digits2")
    cloud = PointCloud(m1=m1, m2=m2, digits1=digits1, digits2=digits2, seed=seed)
    if "x" in frame.columns:
        _check_coords(cloud, frame)
    return cloud


def _check_coords(cloud: PointCloud, frame: pd.DataFrame) -> None:
    X, Y = cloud.integer_coordinates()
    dx, dy = cloud.m1 ** cloud.depth, cloud.m2 ** cloud.depth
    for row, (x, y, sx, sy) in enumerate(zip(X, Y, frame["x"], frame["y"]), start=1):
        try:
            ok = Fraction(sx) == Fraction(x, dx) and Fraction(sy) == Fraction(y, dy)
        except (ValueError, ZeroDivisionError) as e:
            raise CloudFormatError(f"row {row}: bad coordinate") from e
        if not ok:
            raise CloudFormatError(f"row {row}: coordinates disagree with digits")


def write_cloud(cloud: PointCloud, path: str | Path, with_coords: bool = False) -> None:
    Path(path).write_text(format_cloud(cloud, with_coords=with_coords))


def read_cloud(path: str | Path) -> PointCloud:
    text = Path(path).read_text()
    try:
        return parse_cloud(text)
    except CloudFormatError as e:
        raise CloudFormatError(f"{path}: {e}") from e


# -- reports ----------------------------------------------------------------------------

def format_dim_reports(reports: Iterable[DimReport]) -> str:
    lines = ["tau1,tau2,case,value,active,tau_estimated"]
    for r in reports:
        lines.append(",".join([
            r.tau1, r.tau2, r.case.value, _real(r.value), r.active, str(r.tau_estimated).lower(),
        ]))
    return "\n".join(lines) + "\n"


def format_cover_reports(reports: Iterable[CoverReport]) -> str:
    lines = ["n,i,level,exact_count,bound,slack"]
    for r in reports:
        lines.append(f"{r.n},{r.i},{r.level},{r.exact_count},{_real(r.bound)},{_real(r.slack)}")
    return "\n".join(lines) + "\n"


def format_estimate(est: DimensionEstimate) -> str:
    lines: List[str] = ["level,count"]
    lines += [f"{L},{n}" for L, n in zip(est.levels, est.counts)]
    lines.append(f"slope,{_real(est.slope)}")
    lines.append(f"r_squared,{_real(est.r_squared)}")
    corrected = "" if est.corrected_dimension is None else _real(est.corrected_dimension)
    lines.append(f"corrected_dimension,{corrected}")
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | Path | None, stream: TextIO) -> None:
    """Write ``text`` to ``out`` when given, else to ``stream``."""
    if out is None:
        stream.write(text)
    else:
        Path(out).write_text(text)
        logger.info("wrote %s", out)
