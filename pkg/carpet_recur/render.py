"""Raster output: carpets and point clouds as 8-bit grey images (binary PGM).

Pixel (row, col) covers [col/res, (col+1)/res) x [(res-1-row)/res, (res-row)/res),
so the top row is the y = 1 side. Occupied pixels are black (0), the rest white (255).
"""

import logging
from pathlib import Path

import numpy as np
from PIL import Image

from .config import settings
from .errors import BudgetExceeded
from .intlog import ceil_log
from .schemas.boxcount import PointCloud
from .schemas.carpet import Carpet

logger = logging.getLogger(__name__)

BLACK = 0
WHITE = 255


def _blank(resolution: int) -> np.ndarray:
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    return np.full((resolution, resolution), WHITE, dtype=np.uint8)


def _paint(image: np.ndarray, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    res = image.shape[0]
    image[res - 1 - py, px] = BLACK
    return image


def _span(index: np.ndarray, cells: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """First and last pixel met by the half-open cells [index/cells, (index+1)/cells)."""
    lo = (index * resolution // cells).astype(np.int64)
    hi = (((index + 1) * resolution - 1) // cells).astype(np.int64)
    return lo, hi


def render_carpet(c: Carpet, resolution: int, budget: int | None = None) -> np.ndarray:
    """Mark every depth-k cylinder, k the least depth whose cells are at most one pixel wide."""
    image = _blank(resolution)
    k = ceil_log(resolution, c.m1)
    budget = settings.CARPET_RECUR_BUDGET if budget is None else budget
    if c.size ** k > budget:
        raise BudgetExceeded(f"render at depth {k}", c.size ** k, budget)

    # int64 holds m2^k * resolution only while it stays below 2^63
    dtype = np.int64 if (c.m2 ** k) * resolution < 2 ** 62 else object
    pairs = np.asarray(c.alphabet)
    X = np.zeros(1, dtype=dtype)
    Y = np.zeros(1, dtype=dtype)
    for _ in range(k):
        X = (X[:, None] * c.m1 + pairs[:, 0].astype(dtype)[None, :]).ravel()
        Y = (Y[:, None] * c.m2 + pairs[:, 1].astype(dtype)[None, :]).ravel()
    # a cell is at most one pixel on a side, so it meets at most two pixels per axis
    x_lo, x_hi = _span(X, c.m1 ** k, resolution)
    y_lo, y_hi = _span(Y, c.m2 ** k, resolution)
    for px in (x_lo, x_hi):
        for py in (y_lo, y_hi):
            _paint(image, px, py)
    logger.debug("rendered %d cylinders of depth %d at %dx%d", X.size, k, resolution, resolution)
    return image


def render_cloud(cloud: PointCloud, resolution: int) -> np.ndarray:
    image = _blank(resolution)
    X, Y = cloud.integer_coordinates()
    px = (X * resolution // cloud.m1 ** cloud.depth).astype(np.int64)
    py = (Y * resolution // cloud.m2 ** cloud.depth).astype(np.int64)
    return _paint(image, px, py)


def write_pgm(image: np.ndarray, path: str | Path) -> None:
    """Binary P5 PGM, maxval 255."""
    Image.fromarray(np.asarray(image, dtype=np.uint8), mode="L").save(path, format="PPM")
