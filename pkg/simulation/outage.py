"""
Outage events of the MIMO switch channel, estimated by Monte Carlo.

Trials are processed in fixed-size blocks; each block returns an outage count and
the counts are summed, so results do not depend on the number of workers.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy import stats

from analysis.allocation import fixed_allocation_diversity, upper_bound_reciprocal
from analysis.ddf import ddf_dmt, upper_bound_nonreciprocal
from constants import Constants
from exceptions import InvalidArgumentError, SimulationRefusedError
from models import ChannelMode, NetworkConfig, SnrPoint
from simulation.channel import link_capacity, sample_channels, subset_capacities, uplink_gram

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def all_subsets(num_users: int) -> Tuple[Tuple[int, ...], ...]:
    """Every nonempty subset of the users, smallest first."""
    return tuple(
        subset
        for size in range(1, num_users + 1)
        for subset in itertools.combinations(range(num_users), size)
    )


def rate_for(r: float, rho: float) -> float:
    """Per-user rate R = r log2(rho)."""
    return r * np.log2(rho)


def _cutset_block(cfg: NetworkConfig, params: Dict[str, Any], start: int, count: int, seed: int) -> int:
    uplink, _ = sample_channels(cfg, start, count, seed)
    c1 = link_capacity(uplink[:, 0, :], params["rho"])
    return int(np.count_nonzero(c1 / 2.0 < params["R"]))


def _ddf_block(cfg: NetworkConfig, params: Dict[str, Any], start: int, count: int, seed: int) -> int:
    rho, R = params["rho"], params["R"]
    uplink, downlink = sample_channels(cfg, start, count, seed)
    listen = np.zeros(count)
    if R > 0:
        gram = uplink_gram(uplink)
        for subset in all_subsets(cfg.num_users):
            c1 = subset_capacities(gram, subset, rho)
            with np.errstate(divide="ignore"):
                ratio = np.where(c1 > 0.0, len(subset) * R / np.where(c1 > 0.0, c1, 1.0), np.inf)
            listen = np.maximum(listen, ratio)
    # downlink SNR is rho/M per relay antenna
    c2 = link_capacity(downlink[:, 0, :], rho / cfg.M)
    with np.errstate(invalid="ignore"):
        outage = (listen > 1.0) | ((1.0 - listen) * c2 / cfg.K < R)
    return int(np.count_nonzero(outage))


def _static_block(cfg: NetworkConfig, params: Dict[str, Any], start: int, count: int, seed: int) -> int:
    rho, R, a = params["rho"], params["R"], params["a"]
    uplink, downlink = sample_channels(cfg, start, count, seed)
    outage = np.zeros(count, dtype=bool)
    if R > 0:
        gram = uplink_gram(uplink)
        for subset in all_subsets(cfg.num_users):
            outage |= a * subset_capacities(gram, subset, rho) < len(subset) * R
    if params["scheme"] == Constants.SCHEME_MAC_TDMA:
        c2 = link_capacity(downlink, rho / cfg.M)
        outage |= np.any((1.0 - a) / cfg.K * c2 < R, axis=1)
    return int(np.count_nonzero(outage))


_BLOCKS: Dict[str, Callable[..., int]] = {
    Constants.EVENT_CUTSET_RECIPROCAL: _cutset_block,
    Constants.EVENT_DDF: _ddf_block,
    Constants.EVENT_STATIC_PHASES: _static_block,
}


def _count_block(event: str, cfg_dict: Dict[str, Any], params: Dict[str, Any], start: int, count: int, seed: int) -> int:
    """Top-level worker entry so it can be pickled by the process pool."""
    cfg = NetworkConfig(**cfg_dict)
    return _BLOCKS[event](cfg, params, start, count, seed)


def count_outages(
    event: str,
    cfg: NetworkConfig,
    params: Dict[str, Any],
    trials: int,
    seed: int,
    workers: int = 1,
    block_size: int = Constants.TRIAL_BLOCK_SIZE,
) -> int:
    """
    Count outage trials among trial indices [0, trials).

    Args:
        event: Event name
        cfg: Network configuration
        params: Event parameters (rho, R, and a / scheme for static phases)
        trials: Number of trials
        seed: Master seed
        workers: Worker processes; 1 runs in-process
        block_size: Trials per task

    Returns:
        Total number of trials in outage
    """
    if trials < 1:
        raise InvalidArgumentError(f"trials must be at least 1, got {trials}")
    blocks = [(start, min(block_size, trials - start)) for start in range(0, trials, block_size)]
    cfg_dict = cfg.model_dump()
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_count_block, event, cfg_dict, params, start, count, seed)
                for start, count in blocks
            ]
            return sum(future.result() for future in futures)
    return sum(_count_block(event, cfg_dict, params, start, count, seed) for start, count in blocks)


def _check_point_args(rho: float, trials: int) -> None:
    if not rho > 0 or not np.isfinite(rho):
        raise InvalidArgumentError(f"SNR must be positive and finite, got {rho}")
    if trials < 1:
        raise InvalidArgumentError(f"trials must be at least 1, got {trials}")


def _check_subset_cap(cfg: NetworkConfig) -> None:
    if cfg.K > Constants.MAX_SUBSET_PAIRS:
        raise SimulationRefusedError(
            f"subset enumeration is capped at K <= {Constants.MAX_SUBSET_PAIRS} "
            f"({2 ** (2 * Constants.MAX_SUBSET_PAIRS) - 1} subsets), got K={cfg.K}"
        )


def _point(event: str, cfg: NetworkConfig, params: Dict[str, Any], trials: int, seed: int, workers: int) -> SnrPoint:
    outages = count_outages(event, cfg, params, trials, seed, workers)
    point = SnrPoint.from_counts(10.0 * np.log10(params["rho"]), trials, outages)
    logger.debug(f"{event} rho={params['rho']:.4g}: {outages}/{trials} outages")
    return point


def outage_cutset_reciprocal(
    r: float, cfg: NetworkConfig, rho: float, trials: int, seed: int, workers: int = 1
) -> SnrPoint:
    """Empirical P(C1/2 < R) for one user's M x 1 uplink, the reciprocal-channel converse event."""
    _check_point_args(rho, trials)
    params = {"rho": float(rho), "R": float(rate_for(r, rho))}
    return _point(Constants.EVENT_CUTSET_RECIPROCAL, cfg, params, trials, seed, workers)


def outage_ddf(r: float, cfg: NetworkConfig, rho: float, trials: int, seed: int, workers: int = 1) -> SnrPoint:
    """
    Dynamic decode-and-forward outage: the relay listens for a fraction
    a = max_S |S| R / C1^S of the block; outage if a > 1 or (1 - a) C2 / K < R
    for the tracked user.
    """
    _check_point_args(rho, trials)
    if cfg.mode != ChannelMode.NONRECIPROCAL:
        raise SimulationRefusedError("dynamic decode-and-forward outage is defined for non-reciprocal channels")
    _check_subset_cap(cfg)
    params = {"rho": float(rho), "R": float(rate_for(r, rho))}
    return _point(Constants.EVENT_DDF, cfg, params, trials, seed, workers)


def outage_static_phases(
    r: float,
    cfg: NetworkConfig,
    a: float,
    scheme: str,
    rho: float,
    trials: int,
    seed: int,
    workers: int = 1,
) -> SnrPoint:
    """
    Outage of a static two-phase scheme at split a.

    Phase one fails if any subset S has a C1^S < |S| R. For DF-MAC-TDMA phase two fails
    if any user has ((1 - a)/K) C2 < R; the DF-MAC-BC downlink is not simulated, so its
    estimate covers phase one only.
    """
    _check_point_args(rho, trials)
    if not 0.0 < a < 1.0:
        raise InvalidArgumentError(f"phase-one fraction must lie in (0, 1), got {a}")
    if scheme not in Constants.STATIC_SCHEMES:
        raise InvalidArgumentError(f"unknown static scheme {scheme!r}")
    _check_subset_cap(cfg)
    params = {"rho": float(rho), "R": float(rate_for(r, rho)), "a": float(a), "scheme": scheme}
    return _point(Constants.EVENT_STATIC_PHASES, cfg, params, trials, seed, workers)


def cutset_outage_closed_form(r: float, M: int, rho: float) -> float:
    """
    Exact P(log2(1 + rho ||h||^2) < 2R) with ||h||^2 ~ Gamma(M, 1).
    For M = 1 this is 1 - exp(-(2^{2R} - 1)/rho).
    """
    threshold = (2.0 ** (2.0 * rate_for(r, rho)) - 1.0) / rho
    return float(stats.gamma.cdf(threshold, a=M))


def reference_exponents(
    event: str,
    r: float,
    cfg: NetworkConfig,
    a: Optional[float] = None,
    scheme: Optional[str] = None,
) -> Tuple[float, Optional[float], bool]:
    """
    Analytic exponent a sweep of `event` should recover.

    Returns:
        (analytic diversity, analytic upper bound if distinct, partial flag)
    """
    if event == Constants.EVENT_CUTSET_RECIPROCAL:
        return upper_bound_reciprocal(r, cfg.M), None, False
    if event == Constants.EVENT_DDF:
        upper = upper_bound_nonreciprocal(r, cfg) if r < 1.0 else 0.0
        return ddf_dmt(r, cfg), upper, False
    if event == Constants.EVENT_STATIC_PHASES:
        partial = scheme == Constants.SCHEME_MAC_BC
        return fixed_allocation_diversity(r, cfg, a, scheme, phase_one_only=partial), None, partial
    raise InvalidArgumentError(f"unknown simulation event {event!r}")


EVENTS: Dict[str, Callable[..., SnrPoint]] = {
    Constants.EVENT_CUTSET_RECIPROCAL: outage_cutset_reciprocal,
    Constants.EVENT_DDF: outage_ddf,
    Constants.EVENT_STATIC_PHASES: outage_static_phases,
}