"""Sampling from the recurrence measure: growth schedule, forced digit repetition
after each scheduled time and conditional column draws."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Tuple

import numpy as np

from .config import settings
from .errors import (
    BadScheduleParameter,
    DepthTooSmall,
    UnsupportedLength,
    UnsupportedRate,
    ZeroConditional,
)
from .metrics import POINTS_SAMPLED
from .rate import hat_ell
from .recur import recurrence_profile
from .schemas.boxcount import PointCloud
from .schemas.carpet import Carpet
from .schemas.dimtheory import ProbabilityVector
from .schemas.rate import PowerExp, RateFunction
from .schemas.recur import Verdict
from .schemas.sampler import CopyWindow, SampleConfig, Schedule
from .schemas.symbolic import CylinderWord, SymbolicPoint

logger = logging.getLogger(__name__)


def _window(r: RateFunction, n: int) -> CopyWindow:
    return CopyWindow(n=n, copy_both=max(0, hat_ell(r, 2, n)), copy_column=max(0, hat_ell(r, 1, n)))


def make_schedule(r: RateFunction, target_depth: int, growth_margin: int | None = None,
                  first: int | None = None) -> Schedule:
    """Times n_1 < n_2 < ... with n_{i+1} = margin * 2^(i+1) * (n_1 + ... + n_i).

    n_{i+1} is raised to n_i + hat-ell_1(n_i) when the rule would let copy windows overlap.
    Only times whose window ends within ``target_depth`` are kept.
    """
    growth_margin = settings.GROWTH_MARGIN if growth_margin is None else growth_margin
    first = settings.SCHEDULE_FIRST if first is None else first
    if growth_margin < 2:
        raise BadScheduleParameter(f"growth margin must be >= 2, got {growth_margin}")
    if first < 1:
        raise BadScheduleParameter(f"n_1 must be >= 1, got {first}")
    if not isinstance(r.family, PowerExp):
        raise UnsupportedRate("the schedule needs a powexp rate")

    window = _window(r, first)
    if window.end > target_depth:
        raise DepthTooSmall(
            f"n_1 + hat-ell_1(n_1) = {window.end} exceeds target depth {target_depth}"
        )
    windows = [window]
    total = first
    while True:
        i = len(windows)
        nxt = max(growth_margin * 2 ** (i + 1) * total, windows[-1].end)
        window = _window(r, nxt)
        if window.end > target_depth:
            break
        windows.append(window)
        total += nxt
    logger.info("schedule for depth %d: %s", target_depth, [w.n for w in windows])
    return Schedule(windows=tuple(windows), first=first, growth_margin=growth_margin,
                    target_depth=target_depth)


def make_config(c: Carpet, p: ProbabilityVector, r: RateFunction, depth: int, seed: int = 0,
                growth_margin: int | None = None, first: int | None = None) -> SampleConfig:
    schedule = make_schedule(r, depth, growth_margin=growth_margin, first=first)
    cfg = SampleConfig(carpet=c, p=p, rate=r, schedule=schedule, depth=depth, seed=seed)
    _validate(cfg)
    return cfg


def _validate(cfg: SampleConfig) -> None:
    c = cfg.carpet
    if cfg.p.alphabet != c.alphabet:
        raise ValueError("probability vector is indexed by a different alphabet")
    if (cfg.rate.m1, cfg.rate.m2) != (c.m1, c.m2):
        raise ValueError("rate and carpet are attached to different bases")
    if not isinstance(cfg.rate.family, PowerExp):
        raise UnsupportedRate("sampling needs a powexp rate")
    for pair, w in zip(c.alphabet, cfg.p.weights):
        if w <= 0:
            raise ZeroConditional(f"sampling needs strictly positive weights; {pair} has {w}")
    last = cfg.schedule.windows[-1].end if cfg.schedule.windows else 0
    if last > cfg.depth:
        raise DepthTooSmall(f"schedule needs depth {last}, config has {cfg.depth}")


class _Tables:
    """Index tables for vectorized digit drawing."""

    def __init__(self, c: Carpet, p: ProbabilityVector):
        self.pairs = np.asarray(c.alphabet, dtype=np.int16)
        self.weights = np.asarray(p.weights, dtype=float)
        self.weights = self.weights / self.weights.sum()
        columns = sorted(c.columns)
        self.column_of = np.asarray([columns.index(a1) for a1, _ in c.alphabet])
        width = max(c.fibres)
        # members[col, k]: alphabet index of the k-th pair of the column; cdf of the conditional law
        self.members = np.zeros((len(columns), width), dtype=np.int64)
        self.cdf = np.ones((len(columns), width))
        self.count = np.zeros(len(columns), dtype=np.int64)
        for col in range(len(columns)):
            idx = np.flatnonzero(self.column_of == col)
            w = self.weights[idx] / self.weights[idx].sum()
            self.members[col, :len(idx)] = idx
            self.cdf[col, :len(idx)] = np.cumsum(w)
            self.count[col] = len(idx)


def _sample_block(cfg: SampleConfig, tables: _Tables, count: int,
                  rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    D = cfg.depth
    idx = rng.choice(len(tables.weights), size=(count, D), p=tables.weights)
    u = rng.random(size=(count, D))
    for w in cfg.schedule.windows:
        for j in range(1, w.copy_column + 1):
            pos, src = w.n + j - 1, j - 1
            if j <= w.copy_both:
                idx[:, pos] = idx[:, src]
                continue
            col = tables.column_of[idx[:, src]]
            k = (u[:, pos][:, None] >= tables.cdf[col]).sum(axis=1)
            k = np.minimum(k, tables.count[col] - 1)
            idx[:, pos] = tables.members[col, k]
    digits = tables.pairs[idx]
    return digits[..., 0], digits[..., 1]


def sample_point(cfg: SampleConfig) -> SymbolicPoint:
    """One point of depth ``cfg.depth``; drawn from seed sequence [seed, 0]."""
    _validate(cfg)
    d1, d2 = _sample_block(cfg, _Tables(cfg.carpet, cfg.p), 1, np.random.default_rng([cfg.seed, 0]))
    POINTS_SAMPLED.inc()
    return SymbolicPoint(m1=cfg.carpet.m1, m2=cfg.carpet.m2,
                         digits1=tuple(int(d) for d in d1[0]), digits2=tuple(int(d) for d in d2[0]))


def sample_cloud(cfg: SampleConfig, count: int, threads: int | None = None,
                 block_size: int | None = None) -> PointCloud:
    """``count`` points; block b is drawn from seed sequence [seed, b], so the result does
    not depend on the thread count."""
    _validate(cfg)
    if count < 1:
        raise ValueError("count must be >= 1")
    threads = settings.DEFAULT_THREADS if threads is None else max(1, threads)
    block_size = settings.SAMPLE_BLOCK_SIZE if block_size is None else block_size
    tables = _Tables(cfg.carpet, cfg.p)
    blocks = [(b, min(block_size, count - b * block_size))
              for b in range(math.ceil(count / block_size))]

    def draw(block):
        b, size = block
        return _sample_block(cfg, tables, size, np.random.default_rng([cfg.seed, b]))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(draw, blocks))
    POINTS_SAMPLED.inc(count)
    return PointCloud(
        m1=cfg.carpet.m1,
        m2=cfg.carpet.m2,
        digits1=np.concatenate([d1 for d1, _ in parts]),
        digits2=np.concatenate([d2 for _, d2 in parts]),
        seed=cfg.seed,
        schedule=cfg.schedule.times,
        rate=cfg.rate.describe(),
    )


def cylinder_mass(cfg: SampleConfig, w: CylinderWord) -> float:
    """Measure of the cylinder [w] (both words of equal length, at most the depth).

    Free positions contribute p_a, copied positions 1 or 0, column-copied positions
    p_a / p_{a1} or 0.
    """
    _validate(cfg)
    L = w.n1
    if w.n2 != L or L > cfg.depth:
        raise UnsupportedLength(f"cylinder length ({w.n1}, {w.n2}) unsupported at depth {cfg.depth}")
    p: Dict[Tuple[int, int], float] = dict(zip(cfg.carpet.alphabet, cfg.p.weights))
    marg = cfg.p.marginals
    rule: Dict[int, Tuple[str, int]] = {}
    for win in cfg.schedule.windows:
        for j in range(1, win.copy_column + 1):
            rule[win.n + j] = ("both" if j <= win.copy_both else "column", j)

    mass = 1.0
    for pos in range(1, L + 1):
        a = (w.word1[pos - 1], w.word2[pos - 1])
        if pos not in rule:
            mass *= p.get(a, 0.0)
        else:
            kind, src = rule[pos]
            b = (w.word1[src - 1], w.word2[src - 1])
            if kind == "both":
                mass *= 1.0 if a == b else 0.0
            elif a[0] != b[0] or a not in p:
                mass = 0.0
            else:
                mass *= p[a] / marg[a[0]]
        if mass == 0.0:
            return 0.0
    return mass


def check_cloud(cloud: PointCloud, r: RateFunction, times) -> Dict[Verdict, int]:
    """Tally recurrence verdicts of every point at every scheduled time."""
    tally = {v: 0 for v in Verdict}
    for x in cloud.points():
        for verdict in recurrence_profile(x, r, times).values():
            tally[verdict] += 1
    if tally[Verdict.NO]:
        logger.warning("%d point-time pairs failed the recurrence check", tally[Verdict.NO])
    return tally


def scheduled_times(cfg: SampleConfig) -> List[int]:
    return [w.n for w in cfg.schedule.windows if w.end <= cfg.depth]
