#!/usr/bin/env python3
"""
Main entry point for the MIMO switch DMT toolkit.
Computes tradeoff curves, time-allocation bounds, DDF bounds and figure data,
and runs seeded Monte Carlo outage sweeps.
"""

import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from analysis.allocation import scheme_zero_crossing, solve_static, upper_bound_reciprocal
from analysis.ddf import converse_outage_opt, ddf_point, upper_bound_nonreciprocal
from analysis.dmt_curves import bc_sym_dmt, mac_sym_dmt, ppc_dmt
from config import Config
from constants import Constants
from exceptions import InvalidArgumentError, SimulationRefusedError, SwitchDMTError
from figures import figure_table
from models import ChannelMode, NetworkConfig, RunConfig
from utils.grid_utils import parse_snr_grid, r_grid
from utils.io_utils import summary_path, write_csv, write_json
from utils.logger import setup_logger
from workflows.simulation_workflow import SimulationWorkflow

logger = logging.getLogger(__name__)

_DEFAULT_MODES = {
    Constants.EVENT_CUTSET_RECIPROCAL: ChannelMode.RECIPROCAL,
    Constants.EVENT_DDF: ChannelMode.NONRECIPROCAL,
    Constants.EVENT_STATIC_PHASES: ChannelMode.RECIPROCAL,
}


def cmd_curve(args: argparse.Namespace) -> int:
    """Write the vertices of a canonical DMT curve."""
    builders = {
        Constants.SCHEME_PPC: lambda: ppc_dmt(args.m, args.n),
        Constants.SCHEME_MAC_SYM: lambda: mac_sym_dmt(args.users, args.m, args.n),
        Constants.SCHEME_BC_SYM: lambda: bc_sym_dmt(args.users, args.m, args.n),
    }
    curve = builders[args.scheme]()
    r_max = curve.max_multiplexing_gain()
    logger.info(f"{args.scheme} curve: {len(curve.vertices)} vertices, maximum multiplexing gain {r_max:g}")
    if args.format == "json":
        write_json({**curve.to_json_dict(), "max_multiplexing_gain": r_max}, args.output)
    else:
        write_csv(curve.to_csv_rows(), args.output, columns=["r", "d"])
    return Constants.EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    """Write the static-scheme lower bound and the reciprocal cut-set bound."""
    run = RunConfig(
        command="bound",
        network=NetworkConfig(K=args.pairs, M=args.antennas, mode=ChannelMode.RECIPROCAL),
        r_start=args.r_start,
        r_stop=Constants.RECIPROCAL_R_STOP if args.r_stop is None else args.r_stop,
        r_step=args.r_step,
        output=args.output,
        fmt=args.format,
        scheme=args.scheme,
    )
    rows = []
    for r in r_grid(run.r_start, run.r_stop, run.r_step):
        sol = solve_static(float(r), run.network, run.scheme)
        rows.append({
            "r": float(r),
            "d_lower": sol.diversity,
            "d_upper": upper_bound_reciprocal(float(r), run.network.M),
            "a_star": sol.a_star,
        })
    r0 = scheme_zero_crossing(run.scheme, run.network)
    if run.fmt == "json":
        write_json({
            "pairs": run.network.K,
            "antennas": run.network.M,
            "scheme": run.scheme,
            "zero_crossing": r0,
            "rows": rows,
        }, run.output)
    else:
        write_csv(rows, run.output, columns=["r", "d_lower", "d_upper", "a_star"])
    return Constants.EXIT_OK


def cmd_ddf(args: argparse.Namespace) -> int:
    """Write the dynamic DF tradeoff against the non-reciprocal converse."""
    network = NetworkConfig(K=args.pairs, M=args.antennas, mode=ChannelMode.NONRECIPROCAL)
    run = RunConfig(
        command="ddf",
        network=network,
        r_start=args.r_start,
        r_stop=1.0 / (network.K + 1) if args.r_stop is None else args.r_stop,
        r_step=args.r_step,
        output=args.output,
        fmt=args.format,
    )
    columns = ["r", "d_ddf", "d_upper", "argmin_L"] + (["d_converse"] if args.with_converse else [])
    rows = []
    for r in r_grid(run.r_start, run.r_stop, run.r_step):
        point = ddf_point(float(r), network)
        row = {
            "r": float(r),
            "d_ddf": point.diversity,
            "d_upper": upper_bound_nonreciprocal(float(r), network),
            "argmin_L": point.argmin_L,
        }
        if args.with_converse:
            row["d_converse"] = converse_outage_opt(float(r), network)
        rows.append(row)
    if run.fmt == "json":
        write_json({"pairs": network.K, "antennas": network.M, "rows": rows}, run.output)
    else:
        write_csv(rows, run.output, columns=columns)
    return Constants.EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    """Write the data behind one of the three figures."""
    columns, rows = figure_table(args.id, args.pairs, args.antennas, args.r_step)
    if args.format == "json":
        write_json({"figure": args.id, "columns": columns, "rows": rows}, args.output)
    else:
        write_csv(rows, args.output, columns=columns)
    return Constants.EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run a seeded outage sweep and write the points plus a JSON summary."""
    mode = ChannelMode(args.mode) if args.mode else _DEFAULT_MODES[args.event]
    if args.format == "csv" and not args.output:
        raise InvalidArgumentError("simulate writes a sweep CSV plus a JSON summary; pass --output")
    snr_grid = parse_snr_grid(args.snr)
    run = RunConfig(
        command="simulate",
        network=NetworkConfig(K=args.pairs, M=args.antennas, mode=mode),
        snr_grid_db=tuple(snr_grid),
        trials=args.trials,
        seed=Config.default_seed() if args.seed is None else args.seed,
        workers=args.workers or Config.default_workers(),
        output=args.output,
        fmt=args.format,
        event=args.event,
        r_value=args.r,
        split=args.a,
        scheme=args.scheme,
    )
    result = SimulationWorkflow().process(run)

    if run.fmt == "json":
        write_json(result.model_dump(mode="json"), run.output)
        return Constants.EXIT_OK

    rows = [
        {
            "snr_db": p.snr_db,
            "trials": p.trials,
            "outages": p.outage_count,
            "p_hat": p.p_hat,
            "std_err": p.std_err,
        }
        for p in result.points
    ]
    write_csv(rows, run.output, columns=["snr_db", "trials", "outages", "p_hat", "std_err"])
    write_json(result.summary().model_dump(mode="json"), summary_path(run.output))
    return Constants.EXIT_OK


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--output', '-o', help='Output file (stdout when omitted)')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv', help='Output format')


def _add_r_grid_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--r-start', type=float, default=0.0, help='First multiplexing gain')
    parser.add_argument('--r-stop', type=float, default=None, help='Last multiplexing gain')
    parser.add_argument('--r-step', type=float, default=Constants.R_STEP, help='Multiplexing-gain step')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='DMT bounds and outage simulation for the K-pair MIMO switch channel')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    parser.add_argument('--log-file', help='Also log to this file')
    sub = parser.add_subparsers(dest='command', required=True)

    curve = sub.add_parser('curve', help='Vertices of a canonical DMT curve')
    curve.add_argument('--scheme', choices=Constants.CURVE_SCHEMES, required=True)
    curve.add_argument('--m', type=int, required=True, help='Transmit antennas per user')
    curve.add_argument('--n', type=int, required=True, help='Receive antennas')
    curve.add_argument('--users', type=int, default=1, help='Number of users (mac-sym, bc-sym)')
    _add_output_args(curve)
    curve.set_defaults(handler=cmd_curve)

    bound = sub.add_parser('bound', help='Reciprocal-channel static-scheme bounds')
    bound.add_argument('--pairs', type=int, required=True, help='Number of user pairs K')
    bound.add_argument('--antennas', type=int, required=True, help='Relay antennas M')
    bound.add_argument('--scheme', choices=Constants.STATIC_SCHEMES, default=Constants.SCHEME_MAC_BC)
    _add_r_grid_args(bound)
    _add_output_args(bound)
    bound.set_defaults(handler=cmd_bound)

    ddf = sub.add_parser('ddf', help='Non-reciprocal dynamic DF bounds')
    ddf.add_argument('--pairs', type=int, required=True, help='Number of user pairs K')
    ddf.add_argument('--antennas', type=int, required=True, help='Relay antennas M')
    ddf.add_argument('--with-converse', action='store_true', help='Add the numerically solved converse column')
    _add_r_grid_args(ddf)
    _add_output_args(ddf)
    ddf.set_defaults(handler=cmd_ddf)

    figure = sub.add_parser('figure', help='Figure data')
    figure.add_argument('--id', type=int, choices=[1, 2, 3], required=True, help='Figure number')
    figure.add_argument('--pairs', type=int, default=Constants.FIGURE_PAIRS, help='Number of user pairs K')
    figure.add_argument('--antennas', type=int, nargs='+', help='Relay antenna counts')
    figure.add_argument('--r-step', type=float, default=Constants.R_STEP, help='Multiplexing-gain step')
    _add_output_args(figure)
    figure.set_defaults(handler=cmd_figure)

    simulate = sub.add_parser('simulate', help='Monte Carlo outage sweep')
    simulate.add_argument('--event', choices=Constants.SIMULATION_EVENTS, required=True)
    simulate.add_argument('--pairs', type=int, required=True, help='Number of user pairs K')
    simulate.add_argument('--antennas', type=int, required=True, help='Relay antennas M')
    simulate.add_argument('--mode', choices=[m.value for m in ChannelMode], help='Channel mode (default per event)')
    simulate.add_argument('--r', type=float, required=True, help='Per-user multiplexing gain')
    simulate.add_argument('--snr', required=True, help='SNR grid in dB, start:step:stop or a comma list')
    simulate.add_argument('--trials', type=int, required=True, help='Trials per SNR point')
    simulate.add_argument('--seed', type=int, help='Master seed (default: SWITCHDMT_SEED)')
    simulate.add_argument('--workers', type=int, help='Worker processes (default: SWITCHDMT_WORKERS)')
    simulate.add_argument('--a', type=float, help='Phase-one fraction (static-phases)')
    simulate.add_argument('--scheme', choices=Constants.STATIC_SCHEMES, help='Static scheme (static-phases)')
    _add_output_args(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    log_level = logging.DEBUG if args.verbose else Config.log_level()
    setup_logger(log_level, args.log_file or Config.log_file() or None)

    try:
        return args.handler(args)
    except (InvalidArgumentError, ValidationError) as e:
        logger.error(f"Invalid arguments: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return Constants.EXIT_BAD_ARGUMENTS
    except SimulationRefusedError as e:
        logger.error(f"Refused: {str(e)}")
        print(f"refused: {e}", file=sys.stderr)
        return Constants.EXIT_REFUSED
    except SwitchDMTError as e:
        logger.error(f"Error: {str(e)}")
        return Constants.EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
