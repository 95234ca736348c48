"""
Orchestrator Module

High-level interface over the extraction workflow.
"""

import logging
from typing import Any, Dict

from src.frames.frame_source import probe_stream
from src.graph.state import PipelineState
from src.graph.workflow import extraction_workflow
from src.models.settings import RunConfig
from src.validators import validate_run_config

logger = logging.getLogger(__name__)


class PipelineOrchestrator:
    """
    Runs the extraction workflow for one configuration.

    DAG Structure (managed by LangGraph):
    - extract_events (no deps) -> runs first
    - fetch_event_frames -> detect_plates -> read_plates (only with a detector backend)
    """

    def __init__(self):
        """Initialize the orchestrator with the compiled workflow."""
        self.workflow = extraction_workflow
        self._last_state: Dict[str, Any] = {}

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Validate the configuration against the stream header, then run.

        Args:
            config: Validated run configuration with an input path

        Returns:
            {"events": [...], "readings": [...] or None}

        Raises:
            ValueError: If the input is missing or the configuration does not fit the stream
            FileNotFoundError: If the input does not exist
        """
        if not config.input:
            raise ValueError("run configuration has no input")
        info = probe_stream(config.input, config.input_format)
        validate_run_config(config, info)

        logger.info("Starting extraction workflow (%s)...", config.method.value)
        initial_state: PipelineState = {"config": config}
        final_state = self.workflow.invoke(initial_state)
        self._last_state = final_state
        logger.info("Extraction workflow completed.")

        return {
            "events": final_state.get("events", []),
            "readings": final_state.get("readings"),
        }

    def get_stage_status(self) -> Dict[str, str]:
        """Status of each stage based on the last execution."""
        state = self._last_state
        return {
            "extract": "completed" if "events" in state else "pending",
            "frames": "completed" if "frames" in state else "skipped" if "events" in state else "pending",
            "detect": "completed" if "detections" in state else "skipped" if "events" in state else "pending",
            "read": "completed" if state.get("readings") is not None else "skipped" if "events" in state else "pending",
        }

    def reset(self):
        """Reset the orchestrator for a new execution."""
        self._last_state = {}
