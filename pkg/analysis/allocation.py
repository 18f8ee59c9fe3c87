"""
Static time allocation for the reciprocal-channel schemes.

Phase one is a 2K-user MAC into the relay; phase two is either a K-user broadcast
(DF-MAC-BC) or K TDMA slots of point-to-point links (DF-MAC-TDMA). The static split
a* equalises the diversity of the two phases.
"""

import logging
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from analysis.dmt_curves import mac_sym_dmt, ppc_dmt
from constants import Constants
from exceptions import InvalidArgumentError
from models import AllocationSolution, NetworkConfig, PiecewiseLinearCurve

logger = logging.getLogger(__name__)

PhaseFn = Callable[[float], float]


def _check_r(r: float) -> None:
    if r < 0 or not np.isfinite(r):
        raise InvalidArgumentError(f"multiplexing gain must be a finite nonnegative number, got {r}")


def _phase_functions(r: float, cfg: NetworkConfig, scheme: str) -> Tuple[PhaseFn, PhaseFn]:
    """Phase-one (nondecreasing in a) and phase-two (nonincreasing in a) diversities."""
    uplink = mac_sym_dmt(2 * cfg.K, 1, cfg.M)

    def phase_one(a: float) -> float:
        return uplink.evaluate(r / a)

    if scheme == Constants.SCHEME_MAC_BC:
        downlink = mac_sym_dmt(cfg.K, 1, cfg.M)

        def phase_two(a: float) -> float:
            return downlink.evaluate(r / (1.0 - a))
    elif scheme == Constants.SCHEME_MAC_TDMA:
        slot = ppc_dmt(cfg.M, 1)

        def phase_two(a: float) -> float:
            return slot.evaluate(cfg.K * r / (1.0 - a))
    else:
        raise InvalidArgumentError(f"unknown static scheme {scheme!r}")
    return phase_one, phase_two


def _solve_fixed_point(r: float, cfg: NetworkConfig, scheme: str) -> AllocationSolution:
    _check_r(r)
    phase_one, phase_two = _phase_functions(r, cfg, scheme)

    if r == 0:
        # every split gives full diversity M
        a = Constants.TIE_BREAK_SPLIT
        return AllocationSolution(r=r, a_star=a, diversity=phase_one(a), residual=abs(phase_one(a) - phase_two(a)))

    lo = Constants.BISECTION_BRACKET
    hi = 1.0 - Constants.BISECTION_BRACKET

    def gap(a: float) -> float:
        return phase_one(a) - phase_two(a)

    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo >= 0.0 or g_hi <= 0.0:
        # one phase is in outage for every split, so min(LHS, RHS) is zero everywhere
        a = Constants.TIE_BREAK_SPLIT
        logger.debug(f"{scheme} at r={r}: no split gives positive diversity in both phases")
        return AllocationSolution(r=r, a_star=a, diversity=0.0, residual=abs(gap(a)))

    a = bisect(gap, lo, hi, xtol=Constants.BISECTION_XTOL, maxiter=Constants.BISECTION_MAXITER)
    diversity = min(phase_one(a), phase_two(a))
    residual = abs(gap(a))
    if residual > Constants.RESIDUAL_TOL:
        logger.warning(f"{scheme} fixed point at r={r} has residual {residual:.3e}")
    return AllocationSolution(r=r, a_star=float(a), diversity=float(diversity), residual=float(residual))


def solve_macbc(r: float, cfg: NetworkConfig) -> AllocationSolution:
    """
    Static DF-MAC-BC split: d^MAC-sym_{2K,1,M}(r/a) = d^MAC-sym_{K,1,M}(r/(1-a)).

    Args:
        r: Per-user multiplexing gain
        cfg: Network configuration

    Returns:
        The equalising split a* with the common diversity and the fixed-point residual
    """
    return _solve_fixed_point(r, cfg, Constants.SCHEME_MAC_BC)


def solve_mactdma(r: float, cfg: NetworkConfig) -> AllocationSolution:
    """Static DF-MAC-TDMA split: d^MAC-sym_{2K,1,M}(r/a) = d^PPC_{M,1}(Kr/(1-a))."""
    return _solve_fixed_point(r, cfg, Constants.SCHEME_MAC_TDMA)


SOLVERS = {
    Constants.SCHEME_MAC_BC: solve_macbc,
    Constants.SCHEME_MAC_TDMA: solve_mactdma,
}


def solve_static(r: float, cfg: NetworkConfig, scheme: str) -> AllocationSolution:
    if scheme not in SOLVERS:
        raise InvalidArgumentError(f"unknown static scheme {scheme!r}")
    return SOLVERS[scheme](r, cfg)


def lower_bound_reciprocal_macbc(cfg: NetworkConfig, r_grid: Sequence[float]) -> List[AllocationSolution]:
    """Achievable reciprocal-channel tradeoff of static DF-MAC-BC, one solution per grid point."""
    return [solve_macbc(float(r), cfg) for r in r_grid]


def upper_bound_reciprocal(r, M: int):
    """Cut-set converse M(1 - 2r)^+ for reciprocal channels; accepts scalars or arrays."""
    if M < 1:
        raise InvalidArgumentError(f"relay antennas must be positive, got {M}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise InvalidArgumentError("multiplexing gain must be nonnegative")
    value = M * np.clip(1.0 - 2.0 * r_arr, 0.0, None)
    return float(value) if value.ndim == 0 else value


def fixed_allocation_diversity(
    r: float, cfg: NetworkConfig, a: float, scheme: str, phase_one_only: bool = False
) -> float:
    """
    Diversity of a static scheme run at a given split a, without equalising the phases.

    Args:
        r: Per-user multiplexing gain
        cfg: Network configuration
        a: Phase-one time fraction in (0, 1)
        scheme: "mac-bc" or "mac-tdma"
        phase_one_only: Drop the phase-two term (the simulator cannot estimate the BC phase)

    Returns:
        min of the two phase diversities, or the phase-one diversity alone
    """
    _check_r(r)
    if not 0.0 < a < 1.0:
        raise InvalidArgumentError(f"phase-one fraction must lie in (0, 1), got {a}")
    phase_one, phase_two = _phase_functions(r, cfg, scheme)
    if phase_one_only:
        return phase_one(a)
    return min(phase_one(a), phase_two(a))


def scheme_zero_crossing(scheme: str, cfg: NetworkConfig) -> float:
    """
    Maximum per-user multiplexing gain of a static scheme.

    The diversity at the fixed point is nonincreasing in r, so the first r with zero
    diversity is located by bisection on the predicate d(r) > 0.
    """
    hi = 0.5
    if solve_static(0.0, cfg, scheme).diversity == 0.0:
        return 0.0

    def positive(r: float) -> float:
        return 1.0 if solve_static(r, cfg, scheme).diversity > Constants.RESIDUAL_TOL else -1.0

    if positive(hi) > 0:
        return hi
    r0 = bisect(positive, 0.0, hi, xtol=Constants.ZERO_CROSSING_XTOL, maxiter=Constants.BISECTION_MAXITER)
    logger.info(
        f"{scheme} K={cfg.K}, M={cfg.M}: maximum multiplexing gain {r0:.6f} per user, "
        f"{2 * r0:.6f} per pair, {2 * cfg.K * r0:.6f} in sum"
    )
    return float(r0)


def scheme_curve(scheme: str, cfg: NetworkConfig, r_grid: Sequence[float]) -> PiecewiseLinearCurve:
    """Sampled tradeoff curve of a static scheme, closed at its exact zero crossing."""
    r0 = scheme_zero_crossing(scheme, cfg)
    rs = [0.0] + [float(r) for r in r_grid if 0.0 < r < r0]
    ds = [solve_static(r, cfg, scheme).diversity for r in rs]
    return PiecewiseLinearCurve.from_samples(rs, ds, zero_at=r0)
