"""
Quasi-static Rayleigh channel draws and log-det capacities.

Randomness is counter-based: trial t of a run keyed by `master_seed` reads the
Philox stream at a fixed offset, so a draw depends only on (master_seed, t)
and never on how trials are split into blocks or across workers.
"""

import logging

import numpy as np

from exceptions import InvalidArgumentError
from models import ChannelDraw, ChannelMode, NetworkConfig

logger = logging.getLogger(__name__)

# Philox emits four 64-bit words per counter increment
_WORDS_PER_COUNTER = 4


def uniforms_per_trial(cfg: NetworkConfig) -> int:
    """Two uniforms per complex entry, uplink then downlink: 8KM, always a multiple of four."""
    return 2 * 2 * cfg.num_users * cfg.M


def _uniform_block(cfg: NetworkConfig, start: int, count: int, master_seed: int) -> np.ndarray:
    if master_seed < 0:
        raise InvalidArgumentError(f"master seed must be nonnegative, got {master_seed}")
    if start < 0 or count < 0:
        raise InvalidArgumentError(f"trial range must be nonnegative, got start={start}, count={count}")
    width = uniforms_per_trial(cfg)
    bit_generator = np.random.Philox(key=master_seed, counter=start * (width // _WORDS_PER_COUNTER))
    # float64 uniforms consume exactly one 64-bit word each
    return np.random.Generator(bit_generator).random((count, width))


def _complex_gaussian(u: np.ndarray) -> np.ndarray:
    """Box-Muller on uniform pairs (..., 2) giving CN(0, 1) entries."""
    magnitude = np.sqrt(-np.log1p(-u[..., 0]))
    return magnitude * np.exp(2j * np.pi * u[..., 1])


def sample_channels(cfg: NetworkConfig, start: int, count: int, master_seed: int):
    """
    Draw trials [start, start + count) at once.

    Returns:
        (uplink, downlink) arrays of shape (count, 2K, M); in reciprocal mode the
        downlink is the uplink array itself
    """
    u = _uniform_block(cfg, start, count, master_seed)
    half = u.shape[1] // 2
    shape = (count, cfg.num_users, cfg.M, 2)
    uplink = _complex_gaussian(u[:, :half].reshape(shape))
    if cfg.mode == ChannelMode.RECIPROCAL:
        return uplink, uplink
    downlink = _complex_gaussian(u[:, half:].reshape(shape))
    return uplink, downlink


def sample_channel(cfg: NetworkConfig, trial_index: int, master_seed: int) -> ChannelDraw:
    """One trial's channels; identical to row `trial_index` of any batched draw."""
    uplink, downlink = sample_channels(cfg, trial_index, 1, master_seed)
    return ChannelDraw(uplink=uplink[0], downlink=downlink[0], mode=cfg.mode)


def logdet_capacity(H: np.ndarray, rho: float) -> float:
    """
    log2 det(I + rho H H^dagger) in bits per channel use.

    Args:
        H: Complex channel matrix
        rho: Linear SNR

    Returns:
        Nonnegative capacity
    """
    H = np.atleast_2d(np.asarray(H))
    if rho < 0 or not np.isfinite(rho):
        raise InvalidArgumentError(f"SNR must be finite and nonnegative, got {rho}")
    if not np.all(np.isfinite(H)):
        raise InvalidArgumentError("channel matrix has non-finite entries")
    gram = H @ H.conj().T
    _, logabsdet = np.linalg.slogdet(np.eye(gram.shape[0]) + rho * gram)
    return max(float(logabsdet) / np.log(2.0), 0.0)


def subset_capacities(gram: np.ndarray, subset: tuple, rho: float) -> np.ndarray:
    """
    Batched log2 det(I + rho H_S^dagger H_S) for one user subset S.

    Args:
        gram: (trials, 2K, 2K) matrices of uplink inner products h_i^H h_j
        subset: User indices in S
        rho: Linear SNR

    Returns:
        Capacity per trial
    """
    idx = np.asarray(subset)
    sub = gram[:, idx[:, None], idx[None, :]]
    _, logabsdet = np.linalg.slogdet(np.eye(len(idx)) + rho * sub)
    return np.maximum(logabsdet / np.log(2.0), 0.0)


def uplink_gram(uplink: np.ndarray) -> np.ndarray:
    """(trials, 2K, M) user vectors -> (trials, 2K, 2K) Gram matrices."""
    return np.conj(uplink) @ np.swapaxes(uplink, 1, 2)


def link_capacity(vectors: np.ndarray, snr: float) -> np.ndarray:
    """log2(1 + snr * ||h||^2) for a batch of vectors along the last axis."""
    return np.log2(1.0 + snr * np.sum(np.abs(vectors) ** 2, axis=-1))
