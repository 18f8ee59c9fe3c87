"""
LangGraph workflow for the `simulate` command.
"""

import logging
from typing import Any, Callable, Optional, TypedDict

from langgraph.graph import StateGraph, END

from constants import Constants
from exceptions import InvalidArgumentError, SimulationRefusedError
from models import NetworkConfig, RunConfig, SnrPoint, SnrSweepResult
from simulation.outage import EVENTS, reference_exponents
from simulation.sweep import sweep_and_fit

logger = logging.getLogger(__name__)


# State management for the simulation workflow
class SimulationState(TypedDict):
    request: RunConfig
    network: Optional[NetworkConfig]
    estimator: Optional[Callable[..., SnrPoint]]
    result: Optional[SnrSweepResult]


class SimulationWorkflow:

    def __init__(self):
        # Initialize the state graph
        self.workflow = self._create_workflow()

    def _create_workflow(self) -> Any:
        """
        Create the simulation workflow.

        Returns:
            Compiled StateGraph: validate -> sweep -> reference
        """
        workflow = StateGraph(SimulationState)

        workflow.add_node("validate_request", self._validate_request)
        workflow.add_node("run_sweep", self._run_sweep)
        workflow.add_node("attach_reference", self._attach_reference)

        workflow.add_edge("validate_request", "run_sweep")
        workflow.add_edge("run_sweep", "attach_reference")
        workflow.add_edge("attach_reference", END)

        workflow.set_entry_point("validate_request")

        return workflow.compile()

    def process(self, request: RunConfig) -> SnrSweepResult:
        """
        Run a simulation request through the workflow.

        Args:
            request: Validated `simulate` arguments

        Returns:
            Sweep points, fitted exponent and analytic reference
        """
        initial_state = SimulationState(request=request, network=None, estimator=None, result=None)

        logger.info(f"Starting simulation workflow for event {request.event}")
        try:
            final_state = self.workflow.invoke(initial_state)
            if final_state["result"] is None:
                raise ValueError("Workflow did not produce a sweep result")
            return final_state["result"]
        except Exception as e:
            logger.error(f"Error in simulation workflow: {str(e)}")
            raise

    def _validate_request(self, state: SimulationState) -> SimulationState:
        """
        Check the event against its preconditions and bind the estimator.

        Args:
            state: Current workflow state

        Returns:
            Updated workflow state
        """
        request = state["request"]
        network = request.network
        if network is None:
            raise InvalidArgumentError("simulate needs a network configuration")
        if request.event not in EVENTS:
            raise InvalidArgumentError(f"unknown simulation event {request.event!r}")
        if request.r_value is None:
            raise InvalidArgumentError("simulate needs a multiplexing gain")

        estimator = EVENTS[request.event]
        if request.event == Constants.EVENT_STATIC_PHASES:
            if request.split is None or request.scheme not in Constants.STATIC_SCHEMES:
                raise InvalidArgumentError("static-phases needs --a in (0, 1) and --scheme mac-bc|mac-tdma")
            split, scheme = request.split, request.scheme

            def estimator(r, cfg, rho, trials, seed, workers=1):
                return EVENTS[Constants.EVENT_STATIC_PHASES](r, cfg, split, scheme, rho, trials, seed, workers)

        if request.event != Constants.EVENT_CUTSET_RECIPROCAL and network.K > Constants.MAX_SUBSET_PAIRS:
            raise SimulationRefusedError(
                f"{request.event} enumerates all user subsets and is capped at K <= {Constants.MAX_SUBSET_PAIRS}"
            )

        state["network"] = network
        state["estimator"] = estimator
        logger.info(f"Validated {request.event}: K={network.K}, M={network.M}, mode={network.mode.value}")
        return state

    def _run_sweep(self, state: SimulationState) -> SimulationState:
        request = state["request"]
        state["result"] = sweep_and_fit(
            state["estimator"],
            request.r_value,
            state["network"],
            request.snr_grid_db,
            request.trials,
            request.seed,
            workers=request.workers,
            event=request.event,
        )
        return state

    def _attach_reference(self, state: SimulationState) -> SimulationState:
        """Attach the analytic exponent the fit should recover."""
        request = state["request"]
        analytic_d, analytic_upper, partial = reference_exponents(
            request.event, request.r_value, state["network"], request.split, request.scheme
        )
        state["result"] = state["result"].model_copy(
            update={"analytic_d": analytic_d, "analytic_d_upper": analytic_upper, "partial": partial}
        )
        if partial:
            logger.warning("DF-MAC-BC downlink is not simulated; the estimate covers phase one only")
        logger.info(f"Analytic reference exponent {analytic_d:.4f}")
        return state
