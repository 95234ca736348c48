"""
Graph State Module

Defines the typed state schema for the extraction workflow.
"""

from typing import Dict, List, Optional, TypedDict

from src.frames.frame_source import Frame
from src.models.schemas import Detection, ExtractionEvent, PlateReading
from src.models.settings import RunConfig


class PipelineState(TypedDict, total=False):
    """
    Typed state for the extraction workflow.

    Each node reads from and writes to this shared state.
    """
    # Input
    config: RunConfig

    # Frame extraction output
    events: List[ExtractionEvent]

    # Extracted frames, keyed by global frame index
    frames: Dict[int, Frame]

    # Plate detection output, keyed by frame index
    detections: Dict[int, List[Detection]]
    detection_errors: Dict[int, str]

    # Association + OCR output, one reading per event
    readings: Optional[List[PlateReading]]
