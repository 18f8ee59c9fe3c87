"""
Canonical DMT curves: point-to-point, symmetric MAC and symmetric BC.
"""

import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from constants import Constants
from exceptions import InvalidArgumentError
from models import AntennaSpec, PiecewiseLinearCurve

logger = logging.getLogger(__name__)


def _antennas(m: int, n: int, num_users: int = 1) -> AntennaSpec:
    if m < 1 or n < 1 or num_users < 1:
        raise InvalidArgumentError(
            f"antenna counts and user counts must be positive, got m={m}, n={n}, users={num_users}"
        )
    return AntennaSpec(m=m, n=n, num_users=num_users)


def _ppc_value(m: int, n: int, r: float) -> float:
    """d^PPC_{m,n}(r) by interpolating (m-k)(n-k) between integers k."""
    p = min(m, n)
    if r >= p:
        return 0.0
    k = int(np.floor(r))
    lo = (m - k) * (n - k)
    hi = (m - k - 1) * (n - k - 1)
    return float(lo + (hi - lo) * (r - k))


@lru_cache(maxsize=None)
def ppc_dmt(m: int, n: int) -> PiecewiseLinearCurve:
    """
    Optimal tradeoff of an m x n point-to-point Rayleigh channel.

    Args:
        m: Transmit antennas
        n: Receive antennas

    Returns:
        Curve with vertices (k, (m-k)(n-k)) for k = 0..min(m, n)
    """
    spec = _antennas(m, n)
    p = min(spec.m, spec.n)
    vertices = tuple((float(k), float((spec.m - k) * (spec.n - k))) for k in range(p + 1))
    return PiecewiseLinearCurve(vertices=vertices)


def mac_branch_threshold(num_users: int, m: int, n: int) -> float:
    return min(float(m), n / (num_users + 1))


@lru_cache(maxsize=None)
def mac_sym_dmt(num_users: int, m: int, n: int) -> PiecewiseLinearCurve:
    """
    Symmetric-rate MAC tradeoff of `num_users` users with m antennas each and an n-antenna receiver.

    Below the branch threshold min(m, n/(K+1)) the single-user curve d^PPC_{m,n}(r) applies,
    above it the joint-error curve d^PPC_{Km,n}(Kr). The threshold is kept as an explicit vertex.
    """
    spec = _antennas(m, n, num_users)
    K = spec.num_users
    threshold = mac_branch_threshold(K, spec.m, spec.n)
    r_max = min(float(spec.m), spec.n / K)

    breakpoints: List[float] = [0.0]
    breakpoints += [float(k) for k in range(1, int(np.ceil(threshold))) if k < threshold]
    breakpoints.append(threshold)
    joint_max = min(K * spec.m, spec.n)
    breakpoints += [k / K for k in range(int(np.floor(K * threshold)) + 1, joint_max + 1)]
    breakpoints.append(r_max)

    vertices: List[Tuple[float, float]] = []
    for r in sorted(breakpoints):
        if r > r_max + Constants.VERTEX_TOL:
            continue
        if vertices and r - vertices[-1][0] <= Constants.VERTEX_TOL:
            continue
        if r <= threshold:
            d = _ppc_value(spec.m, spec.n, r)
        else:
            d = _ppc_value(K * spec.m, spec.n, K * r)
        vertices.append((r, max(d, 0.0)))

    # the last breakpoint is r_max; pin its diversity to an exact zero
    last_r, _ = vertices[-1]
    vertices[-1] = (last_r, 0.0)

    logger.debug(f"MAC-sym curve K={K}, m={spec.m}, n={spec.n}: {len(vertices)} vertices, threshold {threshold:.6f}")
    return PiecewiseLinearCurve(vertices=tuple(vertices))


def bc_sym_dmt(num_users: int, m: int, n: int) -> PiecewiseLinearCurve:
    """Symmetric BC tradeoff; equal to the MAC curve by uplink-downlink duality."""
    return mac_sym_dmt(num_users, m, n)


def eval_curve(curve: PiecewiseLinearCurve, r: float) -> float:
    """Evaluate a curve at a nonnegative multiplexing gain; zero past its domain."""
    if r < 0:
        raise InvalidArgumentError(f"multiplexing gain must be nonnegative, got {r}")
    return curve.evaluate(r)


def zero_crossing(curve: PiecewiseLinearCurve) -> float:
    return curve.zero_crossing()


def reciprocal_upper_curve(M: int) -> PiecewiseLinearCurve:
    """The cut-set curve M(1 - 2r)^+ as an exact two-vertex curve."""
    if M < 1:
        raise InvalidArgumentError(f"relay antennas must be positive, got {M}")
    return PiecewiseLinearCurve(vertices=((0.0, float(M)), (0.5, 0.0)))
