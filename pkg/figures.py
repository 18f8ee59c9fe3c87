"""
Figure data for the reciprocal bounds, the scheme comparison and the DDF bounds.
Each figure is a table with one column per plotted curve over an r grid.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from analysis.allocation import lower_bound_reciprocal_macbc, solve_mactdma, upper_bound_reciprocal
from analysis.ddf import ddf_dmt, upper_bound_nonreciprocal
from constants import Constants
from exceptions import InvalidArgumentError
from models import ChannelMode, NetworkConfig
from utils.grid_utils import r_grid

logger = logging.getLogger(__name__)

FigureTable = Tuple[List[str], List[Dict[str, Any]]]


def reciprocal_bounds_figure(pairs: int, antennas: Sequence[int], r_step: float) -> FigureTable:
    """Static DF-MAC-BC lower bound against the cut-set bound, one pair of columns per M."""
    rs = r_grid(0.0, Constants.RECIPROCAL_R_STOP, r_step)
    columns = ["r"]
    rows: List[Dict[str, Any]] = [{"r": float(r)} for r in rs]
    for M in antennas:
        cfg = NetworkConfig(K=pairs, M=M, mode=ChannelMode.RECIPROCAL)
        lower = lower_bound_reciprocal_macbc(cfg, rs)
        upper = upper_bound_reciprocal(rs, M)
        columns += [f"d_lower_M{M}", f"d_upper_M{M}"]
        for row, sol, up in zip(rows, lower, upper):
            row[f"d_lower_M{M}"] = sol.diversity
            row[f"d_upper_M{M}"] = float(up)
    return columns, rows


def scheme_comparison_figure(pairs: int, antennas: int, r_step: float) -> FigureTable:
    """DF-MAC-BC against DF-MAC-TDMA and the cut-set bound for one relay size."""
    cfg = NetworkConfig(K=pairs, M=antennas, mode=ChannelMode.RECIPROCAL)
    rs = r_grid(0.0, Constants.RECIPROCAL_R_STOP, r_step)
    macbc = lower_bound_reciprocal_macbc(cfg, rs)
    upper = upper_bound_reciprocal(rs, antennas)
    rows = [
        {
            "r": float(r),
            "d_macbc": bc.diversity,
            "d_mactdma": solve_mactdma(float(r), cfg).diversity,
            "d_upper": float(up),
        }
        for r, bc, up in zip(rs, macbc, upper)
    ]
    return ["r", "d_macbc", "d_mactdma", "d_upper"], rows


def ddf_bounds_figure(pairs: int, antennas: Sequence[int], r_step: float) -> FigureTable:
    """Dynamic DF tradeoff against the independent-channel converse, one pair of columns per M."""
    rs = r_grid(0.0, 1.0 / (pairs + 1), r_step)
    columns = ["r"]
    rows: List[Dict[str, Any]] = [{"r": float(r)} for r in rs]
    for M in antennas:
        cfg = NetworkConfig(K=pairs, M=M, mode=ChannelMode.NONRECIPROCAL)
        columns += [f"d_ddf_M{M}", f"d_upper_M{M}"]
        for row in rows:
            row[f"d_ddf_M{M}"] = ddf_dmt(row["r"], cfg)
            row[f"d_upper_M{M}"] = upper_bound_nonreciprocal(row["r"], cfg)
    return columns, rows


def figure_table(
    figure_id: int,
    pairs: int = Constants.FIGURE_PAIRS,
    antennas: Optional[Sequence[int]] = None,
    r_step: float = Constants.R_STEP,
) -> FigureTable:
    """
    Build the data of one figure.

    Args:
        figure_id: 1 (reciprocal bounds), 2 (scheme comparison) or 3 (DDF bounds)
        pairs: Number of user pairs K
        antennas: Relay antenna counts; figure 2 uses the first entry
        r_step: Multiplexing-gain step

    Returns:
        (column names, rows)
    """
    logger.info(f"Building figure {figure_id} data for K={pairs}")
    if figure_id == 1:
        return reciprocal_bounds_figure(pairs, antennas or Constants.FIGURE_ANTENNAS, r_step)
    if figure_id == 2:
        return scheme_comparison_figure(pairs, (antennas or [Constants.FIGURE_TWO_ANTENNAS])[0], r_step)
    if figure_id == 3:
        return ddf_bounds_figure(pairs, antennas or Constants.FIGURE_ANTENNAS, r_step)
    raise InvalidArgumentError(f"unknown figure id {figure_id}")
