"""Command line: ``python -m carpet_recur <command> ...``.

Exit codes: 0 ok, 1 domain failure or I/O error, 2 unreadable input,
3 violated hypothesis (non-uniform fibre, unlinked tau pair), 4 budget exceeded.
"""

import argparse
import logging
import sys
from typing import List, Sequence

from . import __version__
from .boxcount import estimate_dimension
from .carpet import box_dimension, hausdorff_dimension, is_uniform_fibre, load_carpet
from .config import settings
from .dimtheory import make_vector, theorem_dimension, uniform_vector
from .errors import CarpetRecurError, CoverViolation, SpecParseError
from .io import (
    emit,
    format_cloud,
    format_cover_reports,
    format_dim_reports,
    format_estimate,
    read_cloud,
)
from .logging_config import configure_logging
from .metrics import COMMAND_SECONDS, write_metrics
from .rate import has_limit, parse_rate, tau
from .recur import verify_covering
from .render import render_carpet, render_cloud, write_pgm
from .sampler import check_cloud, make_config, sample_cloud, scheduled_times
from .schemas.recur import Verdict

logger = logging.getLogger(__name__)


def _range(text: str) -> range:
    """``a:b`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from e


def _floats(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


# -- commands -------------------------------------------------------------------------------

def cmd_dim(args) -> int:
    c = load_carpet(args.spec)
    uniform = "true" if is_uniform_fibre(c) else "false"
    print("hausdorff %.12g box %.12g uniform %s" % (hausdorff_dimension(c), box_dimension(c), uniform))
    return 0


def cmd_recur_dim(args) -> int:
    c = load_carpet(args.spec)
    if args.rate is not None:
        r = parse_rate(args.rate, c.m1, c.m2)
        if not has_limit(r):
            logger.warning("ell_1(n)/n has no limit on the tabulated range; the upper bound assumes one")
        reports = [theorem_dimension(c, tau(r, 1), tau(r, 2), allow_unlinked=args.allow_unlinked)]
    else:
        tau1s = _floats(args.tau)
        tau2s = _floats(args.tau2) if args.tau2 else [None] * len(tau1s)
        if len(tau2s) != len(tau1s):
            raise SpecParseError("--tau and --tau2 need the same number of values")
        try:
            reports = [theorem_dimension(c, t1, t2, allow_unlinked=args.allow_unlinked)
                       for t1, t2 in zip(tau1s, tau2s)]
        except ValueError as e:
            if isinstance(e, CarpetRecurError):
                raise
            raise SpecParseError(f"bad tau value: {e}") from e
    emit(format_dim_reports(reports), args.out, sys.stdout)
    return 0


def cmd_sample(args) -> int:
    c = load_carpet(args.spec)
    r = parse_rate(args.rate, c.m1, c.m2)
    if args.weights:
        try:
            p = make_vector(c, [float(v) for v in _floats(args.weights)])
        except ValueError as e:
            raise SpecParseError(f"bad --weights: {e}") from e
    else:
        p = uniform_vector(c)
    cfg = make_config(c, p, r, args.depth, seed=args.seed,
                      growth_margin=args.growth_margin, first=args.first)
    cloud = sample_cloud(cfg, args.count, threads=args.threads)
    emit(format_cloud(cloud, with_coords=args.with_coords), args.out, sys.stdout)

    if args.check:
        tally = check_cloud(cloud, r, scheduled_times(cfg))
        logger.info("recurrence check: %s", {v.value: n for v, n in tally.items()})
        if tally[Verdict.NO]:
            return 1
    return 0


def cmd_estimate(args) -> int:
    cloud = read_cloud(args.cloud)
    est = estimate_dimension(cloud, args.levels, threads=args.threads)
    emit(format_estimate(est), args.out, sys.stdout)
    return 0


def cmd_verify_cover(args) -> int:
    c = load_carpet(args.spec)
    r = parse_rate(args.rate, c.m1, c.m2)
    reports = verify_covering(c, r, args.n, args.i, search_depth=args.search_depth,
                              threads=args.threads)
    emit(format_cover_reports(reports), args.out, sys.stdout)
    violated = [rep.n for rep in reports if rep.violated]
    if violated:
        raise CoverViolation(f"covering estimate exceeded at n = {violated}")
    return 0


def cmd_render(args) -> int:
    if args.carpet is not None:
        image = render_carpet(load_carpet(args.carpet), args.resolution)
    else:
        image = render_cloud(read_cloud(args.cloud), args.resolution)
    write_pgm(image, args.out)
    logger.info("wrote %dx%d image to %s", args.resolution, args.resolution, args.out)
    return 0


# -- parser -----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carpet-recur",
        description="Quantitative recurrence on self-affine carpets",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=settings.DEFAULT_THREADS,
                        help="worker threads for sampling, counting and covering")
    parser.add_argument("--log-level", default=None, help=f"default {settings.LOG_LEVEL}")
    parser.add_argument("--log-json", action="store_true", default=None,
                        help="emit JSON log records on stderr")
    parser.add_argument("--metrics-out", default=None,
                        help="write Prometheus text metrics to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="box and Hausdorff dimension of a carpet")
    p.add_argument("spec")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("recur-dim", help="dimension of the recurrent set")
    p.add_argument("spec")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rate", help="'powexp t=.. gamma=.. c=..' or 'table <path>'")
    src.add_argument("--tau", help="comma-separated tau1 values (inf and negative allowed)")
    p.add_argument("--tau2", help="comma-separated tau2 values, one per --tau value")
    p.add_argument("--allow-unlinked", action="store_true",
                   help="accept tau2 other than tau1 * log_m2(m1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_recur_dim)

    p = sub.add_parser("sample", help="sample recurrent points")
    p.add_argument("spec")
    p.add_argument("--rate", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--first", type=int, default=None, help=f"n_1, default {settings.SCHEDULE_FIRST}")
    p.add_argument("--growth-margin", type=int, default=None,
                   help=f"default {settings.GROWTH_MARGIN}")
    p.add_argument("--weights", help="comma-separated p_a in alphabet order (default uniform)")
    p.add_argument("--with-coords", action="store_true", help="add exact x,y columns")
    p.add_argument("--check", action="store_true",
                   help="check recurrence at every scheduled time; exit 1 on a failure")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", help="box-counting dimension of a point cloud")
    p.add_argument("cloud")
    p.add_argument("--levels", type=_range, required=True, help="a:b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify-cover", help="exact covering counts against the estimate")
    p.add_argument("spec")
    p.add_argument("--rate", required=True)
    p.add_argument("--n", type=_range, required=True, help="a:b")
    p.add_argument("--i", type=int, choices=(1, 2), required=True)
    p.add_argument("--search-depth", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_cover)

    p = sub.add_parser("render", help="binary PGM image of a carpet or point cloud")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--carpet")
    src.add_argument("--cloud")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_json)

    try:
        with COMMAND_SECONDS.labels(command=args.command).time():
            code = args.func(args)
    except CarpetRecurError as e:
        logger.error("%s: %s", type(e).__name__, e)
        code = e.exit_code
    except OSError as e:
        logger.error("I/O error: %s", e)
        code = 1

    if args.metrics_out:
        write_metrics(args.metrics_out)
    return code
