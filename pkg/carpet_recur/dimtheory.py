"""Entropies, lower-bound objectives, the recurrent-set dimension formula and its
maximization over the probability simplex."""

import itertools
import logging
import math
from typing import Dict, Tuple

import numpy as np

from .carpet import hausdorff_dimension, is_uniform_fibre, log_ratio, uniform_fibre
from .config import settings
from .errors import InvalidTauPair, NonUniformFibre
from .schemas.carpet import Carpet
from .schemas.dimtheory import (
    CaseTag,
    DimReport,
    Entropies,
    OptimizationResult,
    ProbabilityVector,
)
from .schemas.rate import TauKind, TauValue

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12

TAU2_COVER = "tau2_cover"
TAU1_COVER = "tau1_cover"


# -- probability vectors -----------------------------------------------------------

def uniform_vector(c: Carpet) -> ProbabilityVector:
    return ProbabilityVector(alphabet=c.alphabet, weights=tuple([1.0 / c.size] * c.size))


def point_mass(c: Carpet, pair) -> ProbabilityVector:
    weights = [0.0] * c.size
    weights[c.index(pair)] = 1.0
    return ProbabilityVector(alphabet=c.alphabet, weights=tuple(weights))


def make_vector(c: Carpet, weights) -> ProbabilityVector:
    """Normalise nonnegative finite weights (alphabet order) to sum 1."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (c.size,):
        raise ValueError(f"expected {c.size} weights, got {w.size}")
    if not np.isfinite(w).all() or (w < 0).any():
        raise ValueError("weights must be finite and nonnegative")
    if w.sum() <= 0:
        raise ValueError("weights must have a positive sum")
    return ProbabilityVector(alphabet=c.alphabet, weights=tuple(float(v) for v in w / w.sum()))


def _column_matrix(c: Carpet) -> np.ndarray:
    """(|A|, M) 0/1 matrix mapping pairs to their column."""
    cols = [a1 for a1, _ in c.column_profile]
    out = np.zeros((c.size, len(cols)))
    for k, (a1, _) in enumerate(c.alphabet):
        out[k, cols.index(a1)] = 1.0
    return out


def _xlogx(p: np.ndarray) -> np.ndarray:
    safe = np.where(p > 0, p, 1.0)
    return np.where(p > 0, p * np.log(safe), 0.0)


def _entropy_arrays(P: np.ndarray, colmat: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Entropies of a batch of probability vectors, rows of P."""
    marg = P @ colmat
    H = -_xlogx(P).sum(axis=-1)
    H1 = -_xlogx(marg).sum(axis=-1)
    cond = marg @ colmat.T
    ratio = np.where(P > 0, P / np.where(cond > 0, cond, 1.0), 1.0)
    H2 = -np.where(P > 0, P * np.log(ratio), 0.0).sum(axis=-1)
    return H, H1, H2


def entropies(c: Carpet, p: ProbabilityVector) -> Entropies:
    if p.alphabet != c.alphabet:
        raise ValueError("probability vector is indexed by a different alphabet")
    H, H1, H2 = _entropy_arrays(np.asarray(p.weights), _column_matrix(c))
    return Entropies(H=float(H), H1=float(H1), H2=float(H2))


def measure_dimension(c: Carpet, p: ProbabilityVector) -> float:
    """Dimension of the Bernoulli measure p: H1/ln m1 + H2/ln m2."""
    e = entropies(c, p)
    return e.H1 / math.log(c.m1) + e.H2 / math.log(c.m2)


# -- tau pairs ---------------------------------------------------------------------

def linked_tau2(c: Carpet, tau1: TauValue) -> TauValue:
    """tau2 = tau1 * log_{m2} m1 (both coordinates share psi)."""
    if tau1.kind is not TauKind.FINITE:
        return tau1
    return TauValue(value=tau1.value * log_ratio(c.m1, c.m2), estimated=tau1.estimated)


def _resolve_taus(c: Carpet, tau1, tau2, allow_unlinked: bool) -> Tuple[TauValue, TauValue]:
    t1 = TauValue.of(tau1)
    if tau2 is None:
        return t1, linked_tau2(c, t1)
    t2 = TauValue.of(tau2)
    if allow_unlinked:
        return t1, t2
    expected = linked_tau2(c, t1)
    if t1.kind is not t2.kind or (
        t1.kind is TauKind.FINITE
        and not math.isclose(t2.value, expected.value, rel_tol=1e-9, abs_tol=1e-12)
    ):
        raise InvalidTauPair(
            f"tau2={t2.label()} is not tau1*log_m2(m1)={expected.label()}; "
            "independent pairs need allow_unlinked"
        )
    return t1, t2


def case_of(c: Carpet, tau1: TauValue) -> CaseTag:
    if tau1.kind is TauKind.NEGATIVE:
        return CaseTag.EDGE_NEGATIVE_TAU
    if tau1.kind is TauKind.INFINITE:
        return CaseTag.EDGE_INFINITE_TAU
    if math.log(c.m2) / math.log(c.m1) > 1 + tau1.value:
        return CaseTag.CASE1
    return CaseTag.CASE2


def _active(expressions: Dict[str, float]) -> Tuple[float, str]:
    (name_a, a), (name_b, b) = expressions.items()
    if abs(a - b) <= TIE_TOLERANCE:
        return min(a, b), "both"
    return (a, name_a) if a < b else (b, name_b)


def _report(value: float, case: CaseTag, expressions: Dict[str, float], active: str,
            t1: TauValue, t2: TauValue) -> DimReport:
    return DimReport(
        value=value,
        case=case,
        expressions=expressions,
        active=active,
        tau1=t1.label(),
        tau2=t2.label(),
        tau_estimated=t1.estimated or t2.estimated,
    )


# -- formula ----------------------------------------------------------------------

def theorem_dimension(c: Carpet, tau1, tau2=None, allow_unlinked: bool = False) -> DimReport:
    """Hausdorff dimension of the psi-recurrent set of a uniform-fibre carpet.

    With A = log_{m1} M and B = log_{m2} N:
      Case1 (log_{m1} m2 > 1 + tau1): min{(A + B)/(1 + tau2), A/(1 + tau1) + B}
      Case2 (otherwise):              min{(A + B)/(1 + tau2), (A + log_{m1} N)/(1 + tau1)}
    """
    M, N = uniform_fibre(c)
    t1, t2 = _resolve_taus(c, tau1, tau2, allow_unlinked)
    case = case_of(c, t1)

    if case is CaseTag.EDGE_NEGATIVE_TAU:
        v = hausdorff_dimension(c)
        return _report(v, case, {"hausdorff_dimension": v}, "hausdorff_dimension", t1, t2)
    if case is CaseTag.EDGE_INFINITE_TAU:
        return _report(0.0, case, {"zero": 0.0}, "zero", t1, t2)
    if t2.kind is not TauKind.FINITE:
        raise InvalidTauPair("tau2 must be finite when tau1 is finite")

    ln1, ln2 = math.log(c.m1), math.log(c.m2)
    A, B = math.log(M) / ln1, math.log(N) / ln2
    exprs = {TAU2_COVER: (A + B) / (1 + t2.value)}
    if case is CaseTag.CASE1:
        exprs[TAU1_COVER] = A / (1 + t1.value) + B
    else:
        exprs[TAU1_COVER] = (A + math.log(N) / ln1) / (1 + t1.value)
    value, active = _active(exprs)
    return _report(value, case, exprs, active, t1, t2)


def torus_dimension(m1: int, m2: int, tau1: float) -> float:
    """Closed form for the full m1 x m2 alphabet (M = m1, N = m2)."""
    lam = math.log(m2) / math.log(m1)
    tau2 = tau1 / lam
    first = 2 / (1 + tau2)
    if lam > 1 + tau1:
        return min(first, 1 / (1 + tau1) + 1)
    return min(first, (1 + lam) / (1 + tau1))


def _objective_coefficients(c: Carpet, t1: TauValue, t2: TauValue, swap_roles: bool):
    """Each expression is alpha*H1 + beta*H2; returns the list of (alpha, beta)."""
    ln1, ln2 = math.log(c.m1), math.log(c.m2)
    if t1.kind is TauKind.NEGATIVE:
        return [(1 / ln1, 1 / ln2)]
    case = case_of(c, t1)
    first = (1 / ((1 + t2.value) * ln1), 1 / ((1 + t2.value) * ln2))
    if case is CaseTag.CASE1:
        second = (1 / ((1 + t1.value) * ln1), 1 / ln2)
    else:
        second = (1 / ((1 + t1.value) * ln1), 1 / ((1 + t1.value) * ln1))
    if swap_roles:
        # roles of H1 and H2 exchanged, for comparison only
        first, second = first[::-1], second[::-1]
    return [first, second]


def lower_objective(c: Carpet, p: ProbabilityVector, tau1, tau2=None,
                    allow_unlinked: bool = False, swap_roles: bool = False) -> float:
    """Lower bound for the recurrent-set dimension obtained from the measure built on p.

      Case1: min{(H1/ln m1 + H2/ln m2)/(1 + tau2), H1/((1 + tau1) ln m1) + H2/ln m2}
      Case2: min{(H1/ln m1 + H2/ln m2)/(1 + tau2), (H1 + H2)/((1 + tau1) ln m1)}
    """
    if not is_uniform_fibre(c):
        raise NonUniformFibre(c.column_profile)
    t1, t2 = _resolve_taus(c, tau1, tau2, allow_unlinked)
    if t1.kind is TauKind.INFINITE:
        return 0.0
    e = entropies(c, p)
    return min(a * e.H1 + b * e.H2 for a, b in _objective_coefficients(c, t1, t2, swap_roles))


# -- maximization -------------------------------------------------------------------

def project_simplex(v: np.ndarray, z: float = 1.0) -> np.ndarray:
    """Euclidean projection onto {y >= 0, sum(y) = z} (sort-based)."""
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(1, len(v) + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _values(P: np.ndarray, colmat: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Objective for each row of P: min over expressions of alpha*H1 + beta*H2."""
    _, H1, H2 = _entropy_arrays(P, colmat)
    terms = np.outer(H1, coeffs[:, 0]) + np.outer(H2, coeffs[:, 1])
    return terms.min(axis=1)


def _gradient(p: np.ndarray, colmat: np.ndarray, coeffs: np.ndarray, temperature: float) -> np.ndarray:
    """Gradient of the log-sum-exp smoothed minimum."""
    q = np.maximum(p, 1e-12)
    marg = np.maximum(colmat.T @ q, 1e-12)
    log_col = colmat @ np.log(marg)
    dH1 = -log_col - 1.0
    dH2 = -np.log(q) + log_col
    _, H1, H2 = _entropy_arrays(q[None, :], colmat)
    terms = coeffs[:, 0] * H1[0] + coeffs[:, 1] * H2[0]
    w = np.exp(-(terms - terms.min()) / temperature)
    w /= w.sum()
    alpha, beta = w @ coeffs
    return alpha * dH1 + beta * dH2


def _ascend(p0: np.ndarray, colmat, coeffs, max_iter: int, lr: float = 0.1,
            patience: int = 200) -> Tuple[np.ndarray, float]:
    p = p0.copy()
    best_p, best = p.copy(), float(_values(p[None, :], colmat, coeffs)[0])
    stale = 0
    temps = np.geomspace(0.1, 1e-4, max_iter)
    for k in range(max_iter):
        g = _gradient(p, colmat, coeffs, temps[k])
        p = project_simplex(p + lr / math.sqrt(k + 1) * g)
        val = float(_values(p[None, :], colmat, coeffs)[0])
        if val > best + 1e-15:
            best_p, best, stale = p.copy(), val, 0
        else:
            stale += 1
            if stale >= patience:
                break
    return best_p, best


def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        edges = (-1,) + bars + (total + parts - 1,)
        rows.append([edges[k + 1] - edges[k] - 1 for k in range(parts)])
    return np.asarray(rows, dtype=float)


def maximize_objective(c: Carpet, tau1, tau2=None, seed: int = 0, restarts: int | None = None,
                       max_iter: int | None = None, grid_max_alphabet: int | None = None,
                       grid_resolution: int | None = None, allow_unlinked: bool = False,
                       tolerance: float = 1e-6) -> OptimizationResult:
    """Approximate maximizer of ``lower_objective`` over the simplex.

    Projected gradient ascent on a smoothed minimum, started from uniform p and from
    random simplex points; small alphabets are also checked on a dense grid.
    """
    if not is_uniform_fibre(c):
        raise NonUniformFibre(c.column_profile)
    t1, t2 = _resolve_taus(c, tau1, tau2, allow_unlinked)
    uniform = uniform_vector(c)

    if t1.kind is TauKind.INFINITE or c.size == 1:
        value = lower_objective(c, uniform, t1, t2, allow_unlinked=True)
        return OptimizationResult(p=uniform, value=value, uniform_value=value, method="exact")

    restarts = settings.OPT_RESTARTS if restarts is None else restarts
    max_iter = settings.OPT_MAX_ITER if max_iter is None else max_iter
    grid_max = settings.OPT_GRID_MAX_ALPHABET if grid_max_alphabet is None else grid_max_alphabet
    resolution = settings.OPT_GRID_RESOLUTION if grid_resolution is None else grid_resolution

    colmat = _column_matrix(c)
    coeffs = np.asarray(_objective_coefficients(c, t1, t2, swap_roles=False))
    rng = np.random.default_rng(seed)

    u = np.asarray(uniform.weights)
    uniform_value = float(_values(u[None, :], colmat, coeffs)[0])
    best_p, best = _ascend(u, colmat, coeffs, max_iter)
    method = "gradient"
    for r in range(restarts):
        start = rng.dirichlet(np.ones(c.size))
        p, val = _ascend(start, colmat, coeffs, max_iter)
        logger.debug("restart %d reached %.12g", r, val)
        if val > best:
            best_p, best = p, val

    grid_value = None
    if c.size <= grid_max:
        grid = _compositions(resolution, c.size) / resolution
        vals = _values(grid, colmat, coeffs)
        k = int(np.argmax(vals))
        grid_value = float(vals[k])
        if grid_value > best:
            best_p, best, method = grid[k], grid_value, "grid"
        if grid_value > best + tolerance:
            logger.warning("grid search beat gradient ascent by %.3g", grid_value - best)

    if best < uniform_value - tolerance:
        logger.warning("maximizer %.12g fell below the uniform value %.12g", best, uniform_value)
    logger.debug("maximize_objective: value %.12g (uniform %.12g, %s)", best, uniform_value, method)
    return OptimizationResult(
        p=make_vector(c, best_p),
        value=best,
        uniform_value=uniform_value,
        method=method,
        restarts=restarts,
        grid_value=grid_value,
    )
