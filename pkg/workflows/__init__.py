"""
Workflow modules orchestrating multi-step runs.
"""

from workflows.simulation_workflow import SimulationWorkflow

__all__ = ["SimulationWorkflow"]
