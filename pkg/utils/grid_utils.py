"""
Utilities for building multiplexing-gain and SNR grids.
"""

import re
from typing import List

import numpy as np

from constants import Constants
from exceptions import InvalidArgumentError


def r_grid(start: float, stop: float, step: float) -> np.ndarray:
    """
    Inclusive grid start, start + step, ..., stop.

    Values are rounded to GRID_DECIMALS so that e.g. 20 * 0.005 prints as 0.1.
    """
    if step <= 0:
        raise InvalidArgumentError(f"grid step must be positive, got {step}")
    if stop < start:
        raise InvalidArgumentError(f"grid stop {stop} lies below start {start}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), Constants.GRID_DECIMALS)


def parse_snr_grid(spec: str) -> List[float]:
    """
    Parse an SNR grid in dB.

    Accepts "start:step:stop" (e.g. "20:5:40") or a comma-separated list ("10,20,30").

    Args:
        spec: Grid specification

    Returns:
        SNR values in dB
    """
    if not spec or spec.strip() == "":
        raise InvalidArgumentError("SNR grid is empty")

    match = re.fullmatch(r"\s*(-?[\d.]+)\s*:\s*([\d.]+)\s*:\s*(-?[\d.]+)\s*", spec)
    if match:
        start, step, stop = (float(g) for g in match.groups())
        return [float(v) for v in r_grid(start, stop, step)]

    try:
        values = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidArgumentError(f"cannot parse SNR grid {spec!r}") from e
    if not values:
        raise InvalidArgumentError("SNR grid is empty")
    return values
