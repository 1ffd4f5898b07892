"""Empirical dimension of point clouds by approximate-square counting."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List

import numpy as np

from .config import settings
from .errors import DepthExceeded, DepthMismatch, InsufficientLevels
from .intlog import approx_height
from .schemas.boxcount import DimensionEstimate, PointCloud

logger = logging.getLogger(__name__)

# top-level count at or above size / SATURATION_RATIO is reported as saturated
SATURATION_RATIO = 10


def _square_keys(d1: np.ndarray, d2: np.ndarray, level: int, height: int) -> np.ndarray:
    keys = np.concatenate([d1[:, :level], d2[:, :height]], axis=1)
    if keys.shape[1] == 0:
        return keys[:1]
    return np.unique(keys, axis=0)


def _partitions(size: int, threads: int) -> List[slice]:
    step = math.ceil(size / threads)
    return [slice(s, min(size, s + step)) for s in range(0, size, step)]


def count_squares(cloud: PointCloud, level: int, threads: int | None = None) -> int:
    """Number of distinct level-``level`` approximate squares hit by the cloud."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    height = approx_height(cloud.m1, cloud.m2, level)
    if level > cloud.depth or height > cloud.depth:
        raise DepthExceeded(f"level {level} needs ({level}, {height}) digits, cloud depth is {cloud.depth}")
    if level == 0:
        return 1

    threads = settings.DEFAULT_THREADS if threads is None else max(1, threads)
    parts = _partitions(cloud.size, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        keys = list(pool.map(
            lambda s: _square_keys(cloud.digits1[s], cloud.digits2[s], level, height), parts
        ))
    return int(np.unique(np.concatenate(keys), axis=0).shape[0])


def euclidean_count(cloud: PointCloud, level: int) -> int:
    """Occupied boxes of the square grid of side m1^-level (cross-check for count_squares)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    if level > cloud.depth or approx_height(cloud.m1, cloud.m2, level) > cloud.depth:
        raise DepthExceeded(f"grid level {level} is finer than cloud depth {cloud.depth}")
    X, Y = cloud.integer_coordinates()
    side = cloud.m1 ** level
    cols = X // cloud.m1 ** (cloud.depth - level)
    rows = Y * side // cloud.m2 ** cloud.depth
    return len(set(zip(cols.tolist(), rows.tolist())))


def estimate_dimension(cloud: PointCloud, levels: Iterable[int],
                       threads: int | None = None) -> DimensionEstimate:
    levels = tuple(sorted(set(levels)))
    if len(levels) < 3:
        raise InsufficientLevels(f"need at least 3 levels, got {len(levels)}")
    counts = tuple(count_squares(cloud, L, threads=threads) for L in levels)

    x = np.asarray(levels, dtype=float) * math.log(cloud.m1)
    y = np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    spread = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - float((residual ** 2).sum()) / spread if spread > 0 else 1.0

    heights = [approx_height(cloud.m1, cloud.m2, L) for L in levels]
    design = np.column_stack([levels, heights, np.ones(len(levels))]).astype(float)
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if cloud.m1 == cloud.m2:
        corrected = float(slope)
    elif rank < 3:
        corrected = None
    else:
        corrected = float(coef[0] / math.log(cloud.m1) + coef[1] / math.log(cloud.m2))

    saturated = counts[-1] * SATURATION_RATIO >= cloud.size
    if saturated:
        logger.warning(
            "count %d at level %d is saturated for %d points; lower the levels or sample more",
            counts[-1], levels[-1], cloud.size,
        )
    return DimensionEstimate(
        levels=levels,
        counts=counts,
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        corrected_dimension=corrected,
        saturated=saturated,
    )


def merge_clouds(a: PointCloud, b: PointCloud) -> PointCloud:
    if (a.m1, a.m2) != (b.m1, b.m2):
        raise DepthMismatch("clouds have different bases")
    if a.depth != b.depth:
        raise DepthMismatch(f"cloud depths differ: {a.depth} vs {b.depth}")
    same = a.seed == b.seed and a.schedule == b.schedule and a.rate == b.rate
    return PointCloud(
        m1=a.m1,
        m2=a.m2,
        digits1=np.concatenate([a.digits1, b.digits1]),
        digits2=np.concatenate([a.digits2, b.digits2]),
        seed=a.seed if same else None,
        schedule=a.schedule if same else (),
        rate=a.rate if same else None,
    )
