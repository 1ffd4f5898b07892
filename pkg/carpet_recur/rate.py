"""Rate functions psi: evaluation, digit counts ell / hat-ell and decay rates tau."""

import logging
import math
import shlex
from fractions import Fraction
from pathlib import Path
from typing import Callable, Tuple

import mpmath
import pandas as pd

from .config import settings
from .errors import HorizonExceeded, SpecParseError, UnsupportedRate
from .intlog import ceil_from_bounds, ceil_neg_log
from .schemas.rate import PowerExp, RateFunction, Table, TauKind, TauValue, to_fraction

logger = logging.getLogger(__name__)

# proxy window min/max of ell_1(n)/n closer than this counts as a limit
LIMIT_TOLERANCE = 0.02


def powexp(m1: int, m2: int, t, gamma=0, c=1) -> RateFunction:
    return RateFunction(m1=m1, m2=m2, family=PowerExp(t=t, gamma=gamma, c=c))


def table(m1: int, m2: int, values: dict, horizon: int | None = None) -> RateFunction:
    horizon = max(values) if horizon is None else horizon
    return RateFunction(m1=m1, m2=m2, family=Table(values=values, horizon=horizon))


def constant_one(m1: int, m2: int) -> RateFunction:
    """psi == 1: every point of the carpet qualifies."""
    return powexp(m1, m2, t=0)


# -- parsing -----------------------------------------------------------------

def parse_rate(text: str, m1: int, m2: int) -> RateFunction:
    """Parse ``powexp t=<real> gamma=<real> c=<real>`` or ``table <path>``."""
    tokens = shlex.split(text)
    if not tokens:
        raise SpecParseError("empty rate spec")
    kind, args = tokens[0], tokens[1:]
    if kind == "table":
        if len(args) != 1:
            raise SpecParseError("expected 'table <path>'")
        return read_rate_table(args[0], m1, m2)
    if kind != "powexp":
        raise SpecParseError(f"unknown rate family {kind!r}")

    params = {}
    for arg in args:
        key, sep, raw = arg.partition("=")
        if not sep or key not in ("t", "gamma", "c") or key in params:
            raise SpecParseError(f"bad powexp parameter {arg!r}")
        try:
            params[key] = to_fraction(raw)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecParseError(f"bad number in {arg!r}") from e
    if "t" not in params:
        raise SpecParseError("powexp needs t=<real>")
    try:
        return powexp(m1, m2, **params)
    except ValueError as e:
        raise SpecParseError(str(e)) from e


def read_rate_table(path: str | Path, m1: int, m2: int) -> RateFunction:
    """CSV with header ``n,psi`` and strictly increasing n; psi may be '1/3' or '1e-5'."""
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SpecParseError(f"{path}: {e}") from e
    if list(df.columns) != ["n", "psi"]:
        raise SpecParseError(f"{path}: header must be 'n,psi'")
    try:
        ns = [int(v) for v in df["n"]]
        values = [to_fraction(v.strip()) for v in df["psi"]]
    except (ValueError, ZeroDivisionError) as e:
        raise SpecParseError(f"{path}: {e}") from e
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise SpecParseError(f"{path}: n must be strictly increasing")
    try:
        return table(m1, m2, dict(zip(ns, values)))
    except ValueError as e:
        raise SpecParseError(f"{path}: {e}") from e


# -- evaluation ----------------------------------------------------------------

def _table_value(f: Table, n: int) -> Fraction:
    if n > f.horizon or n not in f.values:
        raise HorizonExceeded(f"psi({n}) not tabulated (horizon {f.horizon})")
    return f.values[n]


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def psi_mp(r: RateFunction, n: int) -> Callable:
    f = r.family

    def value():
        return _mp(f.c) * mpmath.power(n, -_mp(f.gamma)) * mpmath.power(r.m1, -_mp(f.t) * n)

    return value


def psi_bounds(r: RateFunction, n: int) -> Tuple[Fraction, Fraction]:
    """Exact rational enclosure of psi(n); degenerate when psi(n) is rational."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = r.family
    if isinstance(f, Table):
        v = _table_value(f, n)
        return v, v

    tn = f.t * n
    if tn.denominator == 1 and f.gamma.denominator == 1:
        v = f.c * Fraction(n) ** (-int(f.gamma)) * Fraction(r.m1) ** (-int(tn))
        return v, v

    dps = settings.MPMATH_DPS
    with mpmath.workdps(dps):
        mid = Fraction(mpmath.nstr(psi_mp(r, n)(), dps))
    eps = Fraction(1, 10 ** (dps - 10))
    return mid * (1 - eps), mid * (1 + eps)


def psi(r: RateFunction, n: int) -> float:
    lo, hi = psi_bounds(r, n)
    return float((lo + hi) / 2)


def _ln(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def ell(r: RateFunction, i: int, n: int) -> float:
    """ell_i(n) = -log_{m_i} psi(n)."""
    lo, hi = psi_bounds(r, n)
    m = _base(r, i)
    return -(_ln(lo) + _ln(hi)) / 2 / math.log(m)


def hat_ell(r: RateFunction, i: int, n: int) -> int:
    """ceil(ell_i(n)), decided by integer powers (may be negative when psi(n) > 1)."""
    lo, hi = psi_bounds(r, n)
    m = _base(r, i)
    if lo == hi:
        return ceil_neg_log(lo, m)
    return ceil_from_bounds(lo, hi, m, value=psi_mp(r, n))


def _base(r: RateFunction, i: int) -> int:
    if i == 1:
        return r.m1
    if i == 2:
        return r.m2
    raise ValueError("coordinate index must be 1 or 2")


# -- decay rates -----------------------------------------------------------------

def _tail_window(f: Table, fraction: float) -> list:
    start = max(1, math.ceil(f.horizon * fraction))
    ns = [n for n in f.values if start <= n <= f.horizon]
    if not ns:
        raise HorizonExceeded(f"no tabulated n in [{start}, {f.horizon}]")
    return ns


def tau(r: RateFunction, i: int, tail_fraction: float | None = None) -> TauValue:
    """liminf ell_i(n)/n: closed form for PowerExp, tail-window minimum for tables."""
    m = _base(r, i)
    f = r.family
    if isinstance(f, PowerExp):
        t = float(f.t)
        return TauValue(value=t if i == 1 else t * math.log(r.m1) / math.log(m))

    fraction = settings.TABLE_TAIL_FRACTION if tail_fraction is None else tail_fraction
    proxy = min(ell(r, i, n) / n for n in _tail_window(f, fraction))
    if proxy < 0:
        return TauValue(kind=TauKind.NEGATIVE, value=proxy, estimated=True)
    return TauValue(value=proxy, estimated=True)


def has_limit(r: RateFunction, tail_fraction: float | None = None) -> bool:
    """Whether ell_1(n)/n converges (always for PowerExp; tables judged on the tail window)."""
    f = r.family
    if isinstance(f, PowerExp):
        return True
    fraction = settings.TABLE_TAIL_FRACTION if tail_fraction is None else tail_fraction
    ratios = [ell(r, 1, n) / n for n in _tail_window(f, fraction)]
    return max(ratios) - min(ratios) <= LIMIT_TOLERANCE


def dominating_rate(r: RateFunction, tail_fraction: float | None = None) -> RateFunction:
    """phi(n) = max(psi(n), m1^(-tau_1 n)) on the tabulated range.

    W(psi) is contained in W(phi) and ell_1(n)/n of phi converges to tau_1, so the
    covering estimates apply to phi when psi has no limit.
    """
    f = r.family
    if isinstance(f, PowerExp):
        return r
    t1 = tau(r, 1, tail_fraction)
    if t1.kind is not TauKind.FINITE:
        raise UnsupportedRate("dominating rate needs a finite nonnegative tau_1")
    values = {}
    with mpmath.workdps(settings.MPMATH_DPS):
        for n, v in f.values.items():
            floor_value = Fraction(mpmath.nstr(mpmath.power(r.m1, -mpmath.mpf(t1.value) * n), 30))
            values[n] = max(v, floor_value)
    return table(r.m1, r.m2, values, f.horizon)
