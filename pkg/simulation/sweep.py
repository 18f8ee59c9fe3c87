"""
SNR sweeps and finite-SNR diversity exponent fits.
"""

import logging
from typing import Callable, Dict, Optional, Sequence

import numpy as np
from scipy import stats

from constants import Constants
from exceptions import FitRefusedError, InvalidArgumentError
from models import NetworkConfig, SnrPoint, SnrSweepResult

logger = logging.getLogger(__name__)


def fit_diversity_exponent(
    points: Sequence[SnrPoint],
    min_events: int = Constants.MIN_OUTAGE_EVENTS,
    confidence: float = Constants.CONFIDENCE_LEVEL,
    strict: bool = False,
) -> Dict[str, object]:
    """
    Least-squares slope of -log10 p_hat against log10 rho.

    Args:
        points: Sweep points
        min_events: Points with fewer outage events are left out of the fit
        confidence: Two-sided confidence level of the reported interval
        strict: Raise FitRefusedError instead of returning a refused status

    Returns:
        Dict with fitted_exponent, ci_low, ci_high, fit_window and fit_status
    """
    usable = [p for p in points if p.outage_count >= min_events and p.p_hat > 0.0]
    if len(usable) < 2:
        message = f"only {len(usable)} SNR points have at least {min_events} outage events"
        if strict:
            raise FitRefusedError(message)
        logger.warning(f"Exponent fit refused: {message}")
        return {
            "fitted_exponent": None,
            "ci_low": None,
            "ci_high": None,
            "fit_window": None,
            "fit_status": Constants.FIT_INSUFFICIENT_EVENTS,
        }

    x = np.array([p.snr_db / 10.0 for p in usable])
    y = np.log10([p.p_hat for p in usable])
    fit = stats.linregress(x, y)
    exponent = -float(fit.slope)
    # two points fix the line exactly and leave no residual degrees of freedom
    ci_low = ci_high = None
    if len(usable) > 2:
        half_width = float(stats.t.ppf(0.5 + confidence / 2.0, len(usable) - 2) * fit.stderr)
        ci_low, ci_high = exponent - half_width, exponent + half_width
    else:
        logger.warning("Exponent fit uses two SNR points; no confidence interval reported")
    return {
        "fitted_exponent": exponent,
        "ci_low": ci_low,
        "ci_high": ci_high,
        "fit_window": (float(x.min() * 10.0), float(x.max() * 10.0)),
        "fit_status": Constants.FIT_OK,
    }


def sweep_and_fit(
    op: Callable[..., SnrPoint],
    r: float,
    cfg: NetworkConfig,
    snr_grid_db: Sequence[float],
    trials: int,
    seed: int,
    workers: int = 1,
    event: Optional[str] = None,
) -> SnrSweepResult:
    """
    Run an outage estimator over an SNR grid and fit its diversity exponent.

    Every SNR point reuses the same trial indices, so the channel draws are common
    across the sweep.

    Args:
        op: Outage estimator called as op(r, cfg, rho, trials, seed, workers=...)
        r: Per-user multiplexing gain
        cfg: Network configuration
        snr_grid_db: At least three SNR values in dB
        trials: Trials per SNR point
        seed: Master seed
        workers: Worker processes per point
        event: Name recorded in the result

    Returns:
        Sweep points with the fitted exponent
    """
    if len(snr_grid_db) < 3:
        raise InvalidArgumentError(f"an exponent fit needs at least 3 SNR points, got {len(snr_grid_db)}")

    points = []
    for snr_db in snr_grid_db:
        rho = 10.0 ** (snr_db / 10.0)
        point = op(r, cfg, rho, trials, seed, workers=workers).model_copy(update={"snr_db": float(snr_db)})
        logger.info(f"SNR {snr_db:g} dB: p_hat={point.p_hat:.4e} ({point.outage_count}/{point.trials})")
        points.append(point)

    fit = fit_diversity_exponent(points)
    if fit["fitted_exponent"] is not None:
        logger.info(f"Fitted diversity exponent {fit['fitted_exponent']:.4f} over {fit['fit_window']} dB")
    return SnrSweepResult(
        event=event or getattr(op, "__name__", "custom"),
        network=cfg,
        r=r,
        seed=seed,
        points=points,
        **fit,
    )
