"""
Constants for the MIMO switch DMT toolkit.
Tolerances, simulation defaults and CLI vocabulary live here.
"""


class Constants:
    """Constants used across analysis, simulation and the CLI."""

    # Curve algebra
    VERTEX_TOL = 1e-12

    # Static time-allocation fixed points
    BISECTION_BRACKET = 1e-9
    BISECTION_XTOL = 1e-15
    BISECTION_MAXITER = 200
    RESIDUAL_TOL = 1e-9
    TIE_BREAK_SPLIT = 0.5
    ZERO_CROSSING_XTOL = 1e-12

    # Outage-region optimisation
    DDF_GRID_STEP = 1e-3
    REFINE_XATOL = 1e-9
    ORACLE_STEP = 0.01

    # Monte Carlo
    MIN_OUTAGE_EVENTS = 100
    TRIAL_BLOCK_SIZE = 20_000
    MAX_SUBSET_PAIRS = 3
    CONFIDENCE_LEVEL = 0.95
    DEFAULT_SEED = 20240601

    # Grids
    R_STEP = 0.005
    GRID_DECIMALS = 12
    RECIPROCAL_R_STOP = 0.5

    # Figures
    FIGURE_PAIRS = 3
    FIGURE_ANTENNAS = (4, 5, 6)
    FIGURE_TWO_ANTENNAS = 6

    # Scheme / event names
    SCHEME_PPC = "ppc"
    SCHEME_MAC_SYM = "mac-sym"
    SCHEME_BC_SYM = "bc-sym"
    CURVE_SCHEMES = (SCHEME_PPC, SCHEME_MAC_SYM, SCHEME_BC_SYM)

    SCHEME_MAC_BC = "mac-bc"
    SCHEME_MAC_TDMA = "mac-tdma"
    STATIC_SCHEMES = (SCHEME_MAC_BC, SCHEME_MAC_TDMA)

    EVENT_CUTSET_RECIPROCAL = "cutset-reciprocal"
    EVENT_DDF = "ddf"
    EVENT_STATIC_PHASES = "static-phases"
    SIMULATION_EVENTS = (EVENT_CUTSET_RECIPROCAL, EVENT_DDF, EVENT_STATIC_PHASES)

    # Fit status values
    FIT_OK = "ok"
    FIT_INSUFFICIENT_EVENTS = "insufficient-events"

    # Exit codes
    EXIT_OK = 0
    EXIT_FAILURE = 1
    EXIT_BAD_ARGUMENTS = 2
    EXIT_REFUSED = 3
