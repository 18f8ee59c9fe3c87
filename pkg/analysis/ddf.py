"""
Dynamic decode-and-forward tradeoff for non-reciprocal channels.

The outage region for a subset of |Lambda| = L users is described by the effective
exponent sums (s1, s2). Minimal alpha-cost of reaching s1 on the uplink is the
L x M point-to-point curve at s1; on the single-antenna downlink it is M(1 - s2).
The constraint s1*s2 / (K*s1 + L*s2) <= r is increasing in both sums, so minima
lie on its boundary, which is parameterised by s2 alone.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from analysis.dmt_curves import ppc_dmt
from constants import Constants
from exceptions import InvalidArgumentError
from models import AlphaProfile, DdfPoint, ListeningDecision, NetworkConfig, OutagePoint

logger = logging.getLogger(__name__)


def _check_rate(r: float, upper: float = np.inf) -> None:
    if not 0.0 <= r < upper:
        raise InvalidArgumentError(f"multiplexing gain must lie in [0, {upper}), got {r}")


def constraint_value(s1, s2, K: int, L: int):
    """s1*s2 / (K*s1 + L*s2), taken as 0 where both sums vanish."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    den = K * s1 + L * s2
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.where(den > 0.0, s1 * s2 / np.where(den > 0.0, den, 1.0), 0.0)
    return value


def _boundary_s1(s2, r: float, K: int, L: int, s1_max: float):
    """Largest feasible s1 for a given s2 on the closed constraint set."""
    s2 = np.asarray(s2, dtype=float)
    excess = s2 - r * K
    with np.errstate(divide="ignore", invalid="ignore"):
        bounded = np.where(excess > 0.0, r * L * s2 / np.where(excess > 0.0, excess, 1.0), s1_max)
    return np.minimum(bounded, s1_max)


def _boundary_breakpoints(r: float, K: int, L: int, s1_max: int) -> List[float]:
    """s2 values where the boundary s1 crosses an integer or the s1 cap."""
    points = [0.0, 1.0]
    if r * K <= 1.0:
        points.append(r * K)
    for k in range(1, s1_max + 1):
        if k > r * L:
            s2 = r * K * k / (k - r * L)
            if 0.0 <= s2 <= 1.0:
                points.append(s2)
    return points


def _minimise_on_boundary(cost, breakpoints: Iterable[float]) -> Tuple[float, float]:
    """
    Coarse grid over s2 in [0, 1] plus the analytic breakpoints, then a bounded
    golden-section/Brent refinement around the best candidate.
    """
    step = Constants.DDF_GRID_STEP
    grid = np.concatenate([np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1), np.asarray(list(breakpoints))])
    values = cost(grid)
    best = int(np.argmin(values))
    s2_best, v_best = float(grid[best]), float(values[best])

    lo, hi = max(0.0, s2_best - step), min(1.0, s2_best + step)
    if hi > lo:
        res = minimize_scalar(
            lambda t: float(cost(np.array([t]))[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": Constants.REFINE_XATOL},
        )
        if res.success and res.fun < v_best:
            s2_best, v_best = float(res.x), float(res.fun)
    return s2_best, v_best


def solve_inner_ddf(L: int, K: int, M: int, r: float) -> OutagePoint:
    """
    Minimiser of ppc_cost_{L,M}(s1) + M(1 - s2) subject to s1*s2/(K*s1 + L*s2) <= r.

    Args:
        L: Subset size |Lambda|, 1 <= L <= 2K
        K: Number of pairs
        M: Relay antennas
        r: Per-user multiplexing gain

    Returns:
        The optimal (s1, s2) and its cost
    """
    if K < 1 or M < 1:
        raise InvalidArgumentError(f"K and M must be positive, got K={K}, M={M}")
    if not 1 <= L <= 2 * K:
        raise InvalidArgumentError(f"subset size must lie in [1, {2 * K}], got {L}")
    _check_rate(r)

    uplink = ppc_dmt(L, M)
    s1_max = min(L, M)

    if constraint_value(s1_max, 1.0, K, L) <= r:
        return OutagePoint(s1=float(s1_max), s2=1.0, cost=0.0)

    def cost(s2: np.ndarray) -> np.ndarray:
        s1 = _boundary_s1(s2, r, K, L, s1_max)
        return uplink.evaluate(s1) + M * (1.0 - s2)

    s2, value = _minimise_on_boundary(cost, _boundary_breakpoints(r, K, L, s1_max))
    s1 = float(_boundary_s1(s2, r, K, L, s1_max))
    return OutagePoint(s1=s1, s2=min(max(s2, 0.0), 1.0), cost=max(value, 0.0))


def inner_ddf_opt(L: int, K: int, M: int, r: float) -> float:
    """d^Lambda(r) for any subset of size L."""
    return solve_inner_ddf(L, K, M, r).cost


def ddf_point(r: float, cfg: NetworkConfig) -> DdfPoint:
    """d_DDF(r) with the minimising subset size; ties go to the smaller size."""
    _check_rate(r)
    per_size = {L: inner_ddf_opt(L, cfg.K, cfg.M, r) for L in range(1, 2 * cfg.K + 1)}
    argmin_L = min(per_size, key=lambda L: (per_size[L], L))
    return DdfPoint(r=r, diversity=per_size[argmin_L], argmin_L=argmin_L, per_subset_size=per_size)


def ddf_dmt(r: float, cfg: NetworkConfig) -> float:
    return ddf_point(r, cfg).diversity


def upper_bound_nonreciprocal(r: float, cfg: NetworkConfig) -> float:
    """Converse M((1 - (K+1)r) / (1 - r))^+ for independent channels."""
    _check_rate(r, 1.0)
    return cfg.M * max((1.0 - (cfg.K + 1) * r) / (1.0 - r), 0.0)


@lru_cache(maxsize=1024)
def _converse_grid_min(K: int, r: float) -> float:
    """min of a1 + a2 over the feasible grid points; M only scales the objective."""
    step = Constants.DDF_GRID_STEP
    axis = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    a1, a2 = np.meshgrid(axis, axis, indexing="ij")
    feasible = constraint_value(1.0 - a1, 1.0 - a2, K, 1) <= r
    return float(np.where(feasible, a1 + a2, np.inf).min())


def converse_outage_opt(r: float, cfg: NetworkConfig) -> float:
    """
    Numerical solution of the converse outage problem:
    minimise M*(a1 + a2) over [0, 1]^2 with S1*S2/(K*S1 + S2) <= r, S_i = 1 - a_i.

    A 2-D grid locates the basin, then the boundary S1 = S1(S2) is refined in one dimension.
    """
    _check_rate(r, 1.0)
    K, M = cfg.K, cfg.M
    grid_best = M * _converse_grid_min(K, r)
    if grid_best == 0.0:
        return 0.0

    def cost(s2: np.ndarray) -> np.ndarray:
        s1 = _boundary_s1(s2, r, K, 1, 1.0)
        return M * ((1.0 - s1) + (1.0 - s2))

    _, refined = _minimise_on_boundary(cost, _boundary_breakpoints(r, K, 1, 1))
    logger.debug(f"converse K={K}, M={M}, r={r}: grid {grid_best:.6f}, refined {refined:.6f}")
    return max(min(grid_best, refined), 0.0)


def dynamic_listening_fraction(capacities: Sequence[Tuple[int, float]], R: float) -> ListeningDecision:
    """
    Listening fraction a = max over subsets of |Lambda| R / C1^Lambda.

    Args:
        capacities: (subset size, uplink capacity) per subset
        R: Per-user rate in bits per channel use

    Returns:
        The fraction and whether the system is in outage (a > 1)
    """
    if R < 0:
        raise InvalidArgumentError(f"rate must be nonnegative, got {R}")
    if R == 0:
        return ListeningDecision(fraction=0.0, outage=False)
    fraction = 0.0
    for size, capacity in capacities:
        if capacity < 0:
            raise InvalidArgumentError(f"capacity must be nonnegative, got {capacity}")
        ratio = np.inf if capacity == 0 else size * R / capacity
        fraction = max(fraction, ratio)
    return ListeningDecision(fraction=float(fraction), outage=bool(fraction > 1.0))


def alpha_profile_for(point: OutagePoint, L: int, M: int) -> AlphaProfile:
    """
    Minimal-cost ordered exponents realising an OutagePoint.

    Unit exponents go to the cheapest (leading) eigenvalues, zeros to the most
    expensive, with one fractional entry in between.
    """
    p = min(L, M)
    whole = int(np.floor(point.s1 + Constants.VERTEX_TOL))
    whole = min(whole, p)
    frac = 0.0 if whole == p else point.s1 - whole
    ones = p - whole - (1 if frac > 0.0 else 0)
    alpha1 = [1.0] * ones + ([1.0 - frac] if frac > 0.0 else []) + [0.0] * whole
    return AlphaProfile(alpha1=tuple(alpha1), alpha2=1.0 - point.s2, dims=(L, M, 1))


@lru_cache(maxsize=32)
def _ordered_alpha_grid(L: int, M: int, step: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Weighted cost and S1 of every nonincreasing alpha1 vector on the grid, plus the axis."""
    p = min(L, M)
    axis = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    ordered = np.array(list(itertools.combinations_with_replacement(axis[::-1], p)))
    weights = 2 * np.arange(1, p + 1) - 1 + abs(L - M)
    return ordered @ weights, np.sum(1.0 - ordered, axis=1), axis


def brute_force_inner_ddf(L: int, K: int, M: int, r: float, step: float = Constants.ORACLE_STEP) -> Tuple[float, float]:
    """
    Exhaustive ordered-alpha grid oracle for d^Lambda(r).

    Returns:
        (oracle value, resolution bound). Rounding the true minimiser up to the grid keeps it
        feasible, so the oracle overshoots the infimum by at most step * (sum of weights).
    """
    if not 1 <= L <= 2 * K:
        raise InvalidArgumentError(f"subset size must lie in [1, {2 * K}], got {L}")
    _check_rate(r)
    cost1, s1, axis = _ordered_alpha_grid(L, M, step)
    best = np.inf
    for a2 in axis:
        feasible = constraint_value(s1, 1.0 - a2, K, L) <= r
        if np.any(feasible):
            best = min(best, float(np.min(cost1[feasible])) + M * a2)
    p = min(L, M)
    weight_sum = float(np.sum(2 * np.arange(1, p + 1) - 1 + abs(L - M)) + M)
    return best, step * weight_sum
