"""Carpet construction, spec parsing and classical dimensions."""

import logging
import math
import re
from pathlib import Path
from typing import Iterable, List, Tuple

from .errors import (
    BadBases,
    DigitOutOfRange,
    DuplicatePair,
    EmptyAlphabet,
    NonUniformFibre,
    SpecParseError,
)
from .schemas.carpet import Carpet, Pair

logger = logging.getLogger(__name__)

_INT = re.compile(r"[+-]?\d+")


def build_carpet(m1: int, m2: int, pairs: Iterable[Pair]) -> Carpet:
    if m1 < 2 or m2 < m1:
        raise BadBases(f"bases must satisfy 2 <= m1 <= m2, got m1={m1} m2={m2}")
    seen = set()
    for pair in pairs:
        a1, a2 = pair = (int(pair[0]), int(pair[1]))
        if not (0 <= a1 < m1 and 0 <= a2 < m2):
            raise DigitOutOfRange(pair, m1, m2)
        if pair in seen:
            raise DuplicatePair(pair)
        seen.add(pair)
    if not seen:
        raise EmptyAlphabet("alphabet must contain at least one digit pair")

    alphabet = tuple(sorted(seen))
    counts: dict = {}
    for a1, _ in alphabet:
        counts[a1] = counts.get(a1, 0) + 1
    return Carpet(m1=m1, m2=m2, alphabet=alphabet, column_profile=tuple(sorted(counts.items())))


def full_carpet(m1: int, m2: int) -> Carpet:
    """The whole unit square (integer diagonal torus map)."""
    return build_carpet(m1, m2, [(a1, a2) for a1 in range(m1) for a2 in range(m2)])


def _ints(tokens: List[str], line: int) -> List[int]:
    for tok in tokens:
        if not _INT.fullmatch(tok):
            raise SpecParseError(f"expected an integer, got {tok!r}", line)
    return [int(tok) for tok in tokens]


def parse_carpet_spec(text: str) -> Carpet:
    """Parse the carpet spec format.

    First record ``bases <m1> <m2>``, then one ``<a1> <a2>`` pair per line.
    ``#`` starts a comment; blank lines are skipped.
    """
    bases = None
    pairs: List[Pair] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if bases is None:
            if tokens[0] != "bases" or len(tokens) != 3:
                raise SpecParseError("first record must be 'bases <m1> <m2>'", lineno)
            bases = _ints(tokens[1:], lineno)
            continue
        if len(tokens) != 2:
            raise SpecParseError(f"expected '<a1> <a2>', got {len(tokens)} fields", lineno)
        a1, a2 = _ints(tokens, lineno)
        pairs.append((a1, a2))
    if bases is None:
        raise SpecParseError("missing 'bases' record")
    return build_carpet(bases[0], bases[1], pairs)


def load_carpet(path: str | Path) -> Carpet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SpecParseError(f"{path}: not UTF-8 ({e})") from e
    carpet = parse_carpet_spec(text)
    logger.debug("loaded carpet %s: bases %d %d, %d pairs", path, carpet.m1, carpet.m2, carpet.size)
    return carpet


def format_carpet_spec(c: Carpet) -> str:
    lines = [f"bases {c.m1} {c.m2}"] + [f"{a1} {a2}" for a1, a2 in c.alphabet]
    return "\n".join(lines) + "\n"


def log_ratio(m1: int, m2: int) -> float:
    """log_{m2} m1."""
    return math.log(m1) / math.log(m2)


def box_dimension(c: Carpet) -> float:
    return math.log(c.M) / math.log(c.m1) + math.log(c.size / c.M) / math.log(c.m2)


def hausdorff_dimension(c: Carpet) -> float:
    s = log_ratio(c.m1, c.m2)
    return math.log(sum(n ** s for n in c.fibres)) / math.log(c.m1)


def is_uniform_fibre(c: Carpet) -> bool:
    return len(set(c.fibres)) == 1


def uniform_fibre(c: Carpet) -> Tuple[int, int]:
    """(M, N) of a uniform-fibre carpet; raises NonUniformFibre otherwise."""
    if not is_uniform_fibre(c):
        raise NonUniformFibre(c.column_profile)
    return c.M, c.fibres[0]
