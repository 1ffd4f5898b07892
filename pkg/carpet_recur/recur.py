"""Recurrence predicates, returning-set rectangles and covering counts."""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import mpmath

from .carpet import log_ratio, uniform_fibre
from .config import settings
from .errors import BudgetExceeded, ShiftTooDeep
from .intlog import approx_height, ceil_from_bounds, ceil_neg_log
from .metrics import CYLINDERS_ENUMERATED, SQUARE_TESTS
from .rate import ell, psi_bounds, psi_mp
from .schemas.carpet import Carpet, Pair
from .schemas.rate import RateFunction
from .schemas.recur import CoverReport, RecurrenceQuery, Verdict
from .schemas.symbolic import CylinderWord, Rect, RectKind, SymbolicPoint
from .symbolic import coding_point, digits_to_int

logger = logging.getLogger(__name__)

Key = Tuple[int, int]


# -- recurrence at a single time ---------------------------------------------------

def return_distance_bounds(x: SymbolicPoint, n: int, coord: int) -> Tuple[Fraction, Fraction]:
    """Enclosure of |x_coord - (T^n x)_coord| over all infinite extensions of x.

    With x = a + s, s in [0, m^-D], the shifted point is b + m^n s, so the
    difference lies in [a - b - (m^n - 1) m^-D, a - b].
    """
    if not 1 <= n:
        raise ValueError("n must be >= 1")
    if n >= x.depth:
        raise ShiftTooDeep(f"cannot test time {n} on a depth-{x.depth} point")
    digits, m = (x.digits1, x.m1) if coord == 1 else (x.digits2, x.m2)
    scale = m ** x.depth
    mn = m ** n
    hi = digits_to_int(digits, m) - digits_to_int(digits[n:], m) * mn
    lo = hi - (mn - 1)
    if lo <= 0 <= hi:
        abs_lo, abs_hi = 0, max(-lo, hi)
    else:
        abs_lo, abs_hi = min(abs(lo), abs(hi)), max(abs(lo), abs(hi))
    return Fraction(abs_lo, scale), Fraction(abs_hi, scale)


def is_recurrent_at(x: SymbolicPoint, n: int, r: RateFunction) -> Verdict:
    """Decide |x - T^n x| < psi(n) coordinate-wise on a truncated point."""
    if (x.m1, x.m2) != (r.m1, r.m2):
        raise ValueError("point and rate are attached to different bases")
    psi_lo, psi_hi = psi_bounds(r, n)
    bounds = [return_distance_bounds(x, n, coord) for coord in (1, 2)]
    if any(lo >= psi_hi for lo, _ in bounds):
        return Verdict.NO
    if all(hi < psi_lo for _, hi in bounds):
        return Verdict.YES
    return Verdict.UNKNOWN


def recurrence_profile(x: SymbolicPoint, r: RateFunction, times: Iterable[int]) -> Dict[int, Verdict]:
    return {n: is_recurrent_at(x, n, r) for n in times}


# -- returning sets of a cylinder ----------------------------------------------------

def _check_word(w: CylinderWord) -> int:
    if w.n1 != w.n2 or w.n1 < 1:
        raise ValueError("expected a word of A^n with n >= 1")
    return w.n1


def fixed_point(w: CylinderWord) -> Tuple[Fraction, Fraction]:
    """pi(w^infinity): the fixed point of the affine branch of T^n on I(w)."""
    n = _check_word(w)
    return (
        Fraction(digits_to_int(w.word1, w.m1), w.m1 ** n - 1),
        Fraction(digits_to_int(w.word2, w.m2), w.m2 ** n - 1),
    )


def fixed_point_rect(w: CylinderWord, r: RateFunction) -> Rect:
    """Open rectangle |x_i - pi(w^inf)_i| < psi(n)/(m_i^n - 1) containing J(w).

    Cut to the unit square when it sticks out; the cut sides are closed and ``clipped`` is set.
    """
    n = _check_word(w)
    _, psi_hi = psi_bounds(r, n)
    c1, c2 = fixed_point(w)
    d1 = psi_hi / (w.m1 ** n - 1)
    d2 = psi_hi / (w.m2 ** n - 1)
    x_lo, x_hi, y_lo, y_hi = c1 - d1, c1 + d1, c2 - d2, c2 + d2
    closed = frozenset(side for side, cut in (("x_lo", x_lo < 0), ("x_hi", x_hi > 1),
                                               ("y_lo", y_lo < 0), ("y_hi", y_hi > 1)) if cut)
    clipped = bool(closed)
    if clipped:
        logger.debug("fixed-point rectangle of %s clipped to the unit square", w.pairs)
    return Rect(
        x_lo=max(x_lo, Fraction(0)),
        x_hi=min(x_hi, Fraction(1)),
        y_lo=max(y_lo, Fraction(0)),
        y_hi=min(y_hi, Fraction(1)),
        kind=RectKind.OPEN,
        clipped=clipped,
        closed_sides=closed,
    )


def coarse_return_rect(w: CylinderWord, r: RateFunction) -> Rect:
    """The 4 psi(n) m1^-n by 4 psi(n) m2^-n rectangle centred at the fixed point."""
    n = _check_word(w)
    _, psi_hi = psi_bounds(r, n)
    c1, c2 = fixed_point(w)
    d1 = 2 * psi_hi / w.m1 ** n
    d2 = 2 * psi_hi / w.m2 ** n
    return Rect(x_lo=c1 - d1, x_hi=c1 + d1, y_lo=c2 - d2, y_hi=c2 + d2, kind=RectKind.OPEN)


def affine_return_distance(w: CylinderWord, x: SymbolicPoint, coord: int) -> Fraction:
    """(m^n - 1)|x - pi(w^inf)| for the finite expansion x inside I(w); equals |x - T^n x|."""
    n = _check_word(w)
    if x.digits1[:n] != w.word1 or x.digits2[:n] != w.word2:
        raise ValueError("point does not lie in the cylinder of w")
    c = fixed_point(w)[coord - 1]
    m = w.m1 if coord == 1 else w.m2
    return (m ** n - 1) * abs(coding_point(x)[coord - 1] - c)


# -- covering ------------------------------------------------------------------------

def _level(r: RateFunction, n: int, m_i: int) -> int:
    """ceil(-log_{m1}(4 psi(n) m_i^-n)), clamped at 0."""
    lo, hi = psi_bounds(r, n)
    scale = Fraction(4, m_i ** n)
    if lo == hi:
        k = ceil_neg_log(lo * scale, r.m1)
    else:
        def value():
            return 4 * psi_mp(r, n)() / mpmath.mpf(m_i) ** n

        k = ceil_from_bounds(lo * scale, hi * scale, r.m1, value=value)
    return max(k, 0)


def cover_levels(c: Carpet, r: RateFunction, n: int) -> RecurrenceQuery:
    if (c.m1, c.m2) != (r.m1, r.m2):
        raise ValueError("carpet and rate are attached to different bases")
    return RecurrenceQuery(n=n, L1n=_level(r, n, c.m1), L2n=_level(r, n, c.m2))


def cover_bound(c: Carpet, r: RateFunction, n: int, i: int) -> float:
    """Covering estimate for W_n by level-L_{i,n} approximate squares.

    i=2: 9 M^((log_{m1} m2 - 1) n) (MN)^n.
    i=1: 3 (MN)^(theta n + ell_2(n)) M^((1 - theta) n - ell_2(n)) when
         ceil(theta L_{1,n}) <= n, else 9 (MN)^n; theta = log_{m2} m1.
    """
    M, N = uniform_fibre(c)
    theta = log_ratio(c.m1, c.m2)
    if i == 2:
        return 9 * M ** ((1 / theta - 1) * n) * (M * N) ** n
    if i != 1:
        raise ValueError("i must be 1 or 2")
    L1 = cover_levels(c, r, n).L1n
    if approx_height(c.m1, c.m2, L1) <= n:
        l2 = ell(r, 2, n)
        return 3 * (M * N) ** (theta * n + l2) * M ** ((1 - theta) * n - l2)
    return 9.0 * (M * N) ** n


class _SquareSearch:
    """Depth-first digit search for level-L approximate squares meeting a rectangle.

    Positions 1..n follow the word w, positions up to ceil(S log_{m2} m1) pick pairs of A,
    the remaining positions up to S pick nonempty columns. Every leaf is an admissible
    depth-S approximate square; it is kept when it overlaps the rectangle.
    """

    def __init__(self, c: Carpet, level: int, search_depth: int, node_limit: int):
        self.c = c
        self.columns = sorted(c.columns)
        self.level = level
        self.depth = search_depth
        self.height = approx_height(c.m1, c.m2, search_depth)
        self.level_height = approx_height(c.m1, c.m2, level)
        self.node_limit = node_limit

    def run(self, word: Sequence[Pair], rect: Rect) -> Tuple[Set[Key], int]:
        self.word = word
        self.rect = rect
        self.keys: Set[Key] = set()
        self.nodes = 0
        self._visit(0, 0, 0)
        return self.keys, self.nodes

    def _overlaps(self, X: int, j: int, Y: int, k: int) -> bool:
        sx, sy = self.c.m1 ** j, self.c.m2 ** k
        rect = self.rect
        return (rect.x_lo * sx < X + 1 and X < rect.x_hi * sx
                and rect.y_lo * sy < Y + 1 and Y < rect.y_hi * sy)

    def _key(self, X: int, j: int, Y: int, k: int) -> Key:
        return X // self.c.m1 ** (j - self.level), Y // self.c.m2 ** (k - self.level_height)

    def _visit(self, j: int, X: int, Y: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExceeded("digit-search nodes", self.nodes, self.node_limit)
        k = min(j, self.height)
        if not self._overlaps(X, j, Y, k):
            return
        if j >= self.level and self._key(X, j, Y, k) in self.keys:
            return
        if j == self.depth:
            self.keys.add(self._key(X, j, Y, k))
            return

        m1, m2 = self.c.m1, self.c.m2
        if j < len(self.word):
            a1, a2 = self.word[j]
            if j < self.height:
                self._visit(j + 1, X * m1 + a1, Y * m2 + a2)
            else:
                self._visit(j + 1, X * m1 + a1, Y)
        elif j < self.height:
            for a1, a2 in self.c.alphabet:
                self._visit(j + 1, X * m1 + a1, Y * m2 + a2)
        else:
            for a1 in self.columns:
                self._visit(j + 1, X * m1 + a1, Y)


def _count_chunk(c: Carpet, r: RateFunction, words: List[Tuple[Pair, ...]], level: int,
                 search_depth: int, node_limit: int) -> Tuple[Set[Key], int]:
    search = _SquareSearch(c, level, search_depth, node_limit)
    keys: Set[Key] = set()
    nodes = 0
    for word in words:
        w = CylinderWord(m1=c.m1, m2=c.m2, word1=tuple(a for a, _ in word),
                         word2=tuple(b for _, b in word))
        search.node_limit = node_limit - nodes
        found, used = search.run(word, fixed_point_rect(w, r))
        keys |= found
        nodes += used
    return keys, nodes


def exact_cover_count(c: Carpet, r: RateFunction, n: int, level: int,
                      search_depth: int | None = None, budget: int | None = None,
                      test_budget: int | None = None, threads: int = 1) -> int:
    """Number of level-``level`` approximate squares meeting the union over w in A^n of
    the enclosing rectangles of J(w), restricted to admissible digit extensions of w.

    With a common ``search_depth`` the count is nondecreasing in ``level``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    search_depth = level if search_depth is None else search_depth
    if search_depth < level or level < 0:
        raise ValueError("need 0 <= level <= search_depth")
    budget = settings.CARPET_RECUR_BUDGET if budget is None else budget
    test_budget = settings.CARPET_RECUR_TEST_BUDGET if test_budget is None else test_budget

    cylinders = c.size ** n
    if cylinders > budget:
        raise BudgetExceeded(f"cylinders |A|^{n}", cylinders, budget)

    words = list(itertools.product(c.alphabet, repeat=n))
    threads = max(1, threads)
    size = max(1, math.ceil(len(words) / (threads * 4)))
    chunks = [words[k:k + size] for k in range(0, len(words), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(
            lambda chunk: _count_chunk(c, r, chunk, level, search_depth, test_budget), chunks
        ))

    keys: Set[Key] = set()
    nodes = 0
    for found, used in results:
        keys |= found
        nodes += used
    if nodes > test_budget:
        raise BudgetExceeded("digit-search nodes", nodes, test_budget)

    CYLINDERS_ENUMERATED.inc(cylinders)
    SQUARE_TESTS.inc(nodes)
    logger.debug("cover count n=%d level=%d: %d squares, %d cylinders, %d nodes",
                 n, level, len(keys), cylinders, nodes)
    return len(keys)


def verify_covering(c: Carpet, r: RateFunction, n_range: Iterable[int], i: int,
                    search_depth: int | None = None, threads: int = 1) -> List[CoverReport]:
    """Exact covering count against the covering estimate for each n."""
    reports = []
    for n in n_range:
        level = cover_levels(c, r, n).level(i)
        count = exact_cover_count(c, r, n, level, search_depth=search_depth, threads=threads)
        bound = cover_bound(c, r, n, i)
        report = CoverReport(n=n, i=i, level=level, exact_count=count, bound=bound,
                             slack=bound / count if count else math.inf)
        if report.violated:
            logger.warning("n=%d i=%d: %d squares exceed the estimate %.6g", n, i, count, bound)
        reports.append(report)
    return reports
