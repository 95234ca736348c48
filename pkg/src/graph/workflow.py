"""
Workflow Module

Defines the LangGraph workflow for the extraction pipeline:
scan line -> extraction events -> event frames -> plate boxes -> readings.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

from langgraph.graph import END, START, StateGraph

from src.ala import run as run_ala
from src.detectors import create_detector, detect_plates as detect_frame_plates, read_plate
from src.errors import PluginError
from src.frames.frame_source import Frame, open_stream, read_frames_at
from src.graph.state import PipelineState
from src.models.schemas import Detection, PlateReading
from src.models.settings import DetectorBackend, MarkDetector, Method, OcrBackend, RunConfig
from src.plugin_client import PluginClient, get_plugin_client
from src.utils import load_scenario
from src.visual_rhythm import run_vr

logger = logging.getLogger(__name__)


def _plugin_client(config: RunConfig) -> Optional[PluginClient]:
    return get_plugin_client(config.plugin_command, timeout=config.plugin_timeout)


# ============================================================================
# Node Functions
# ============================================================================

def extract_events(state: PipelineState) -> Dict[str, Any]:
    """
    Extraction node: one pass over the stream with the configured method.
    Only the scan line of each frame is kept.
    """
    logger.info("Executing node: extract_events...")
    config = state["config"]
    frames = open_stream(config.input, config.input_format)

    if config.method == Method.VR:
        client = _plugin_client(config) if config.mark_detector == MarkDetector.PLUGIN else None
        events = run_vr(frames, config, client)
    else:
        events = list(run_ala(frames, config.line_row, config.gamma, config.bgsub))

    logger.info("Node extract_events completed: %d events.", len(events))
    return {"events": events}


def route_after_extraction(state: PipelineState) -> str:
    """Plates are only read when a detector backend is configured."""
    if state["config"].detector is None:
        return END
    return "fetch_event_frames"


def fetch_event_frames(state: PipelineState) -> Dict[str, Any]:
    """Frame node: random access to the extracted frames only."""
    logger.info("Executing node: fetch_event_frames...")
    config = state["config"]
    indices = {event.frame for event in state.get("events", [])}
    frames = read_frames_at(config.input, config.input_format, indices)
    missing = len(indices) - len(frames)
    if missing:
        logger.warning("%d event frames could not be read", missing)
    logger.info("Node fetch_event_frames completed.")
    return {"frames": frames}


def detect_plates(state: PipelineState) -> Dict[str, Any]:
    """
    Detection node: plate boxes for every extracted frame.
    A plugin failure marks that frame; other frames carry on.
    """
    logger.info("Executing node: detect_plates...")
    config = state["config"]
    scenario = load_scenario(config.scenario) if config.detector == DetectorBackend.ORACLE else None
    needs_client = config.detector == DetectorBackend.PLUGIN
    detector = create_detector(config.detector, scenario=scenario,
                               client=_plugin_client(config) if needs_client else None)

    def detect_one(frame: Frame) -> Tuple[int, Optional[List[Detection]], Optional[str]]:
        try:
            return frame.index, detect_frame_plates(frame, detector), None
        except PluginError as e:
            logger.warning("Detector failed on frame %d: %s", frame.index, e)
            return frame.index, None, str(e)

    frames = [state["frames"][i] for i in sorted(state.get("frames", {}))]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(detect_one, frames))
    else:
        results = [detect_one(frame) for frame in frames]

    detections: Dict[int, List[Detection]] = {}
    errors: Dict[int, str] = {}
    for index, found, error in results:
        if error is not None:
            errors[index] = error
        else:
            detections[index] = found

    logger.info("Node detect_plates completed: %d frames, %d failures.", len(detections), len(errors))
    return {"detections": detections, "detection_errors": errors}


def read_plates(state: PipelineState) -> Dict[str, Any]:
    """Association + OCR node: exactly one reading per event."""
    logger.info("Executing node: read_plates...")
    config = state["config"]
    frames = state.get("frames", {})
    detections = state.get("detections", {})
    errors = state.get("detection_errors", {})
    ocr_backend = OcrBackend(config.ocr)

    readings: List[PlateReading] = []
    for event in state.get("events", []):
        if event.frame in errors:
            readings.append(PlateReading.failed(event, f"detector error: {errors[event.frame]}"))
        elif event.frame not in frames:
            readings.append(PlateReading.failed(event, "frame not available"))
        else:
            readings.append(read_plate(
                frames[event.frame], event, detections.get(event.frame, []),
                config.line_row, ocr_backend,
            ))

    failed = sum(1 for r in readings if r.text is None)
    logger.info("Node read_plates completed: %d readings, %d failed.", len(readings), failed)
    return {"readings": readings}


# ============================================================================
# Workflow Graph Definition
# ============================================================================

def create_workflow() -> StateGraph:
    """
    Create and compile the extraction workflow.

    DAG Structure:
    - extract_events (no deps) -> runs first
    - fetch_event_frames -> detect_plates -> read_plates, only with a detector backend

    Returns:
        Compiled LangGraph StateGraph
    """
    workflow = StateGraph(PipelineState)

    workflow.add_node("extract_events", extract_events)
    workflow.add_node("fetch_event_frames", fetch_event_frames)
    workflow.add_node("detect_plates", detect_plates)
    workflow.add_node("read_plates", read_plates)

    workflow.add_edge(START, "extract_events")
    workflow.add_conditional_edges(
        "extract_events", route_after_extraction, ["fetch_event_frames", END]
    )
    workflow.add_edge("fetch_event_frames", "detect_plates")
    workflow.add_edge("detect_plates", "read_plates")
    workflow.add_edge("read_plates", END)

    return workflow.compile()


# Create singleton workflow instance
extraction_workflow = create_workflow()
