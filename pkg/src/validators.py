"""
Validators Module

Checks run before any frame is read or any output is trusted.
"""

from typing import List

from src.models.schemas import ExtractionEvent
from src.models.settings import RunConfig
from src.frames.frame_source import StreamInfo


def validate_run_config(config: RunConfig, info: StreamInfo) -> None:
    """
    Validate a run configuration against the stream header.

    Raises:
        ValueError: If the scan line or gamma does not fit the frame
    """
    if config.line_row >= info.height:
        raise ValueError(
            f"line row ({config.line_row}) must be smaller than frame height ({info.height})"
        )
    if config.gamma > info.width:
        raise ValueError(
            f"gamma ({config.gamma}) is wider than the frame ({info.width}); no crossing could be reported"
        )


def validate_events(events: List[ExtractionEvent], info: StreamInfo) -> None:
    """
    Validate that events lie inside the stream.

    Raises:
        ValueError: On the first event outside the frame or past the last frame
    """
    for idx, event in enumerate(events):
        if event.x1 > info.width:
            raise ValueError(f"Event at index {idx} ends at x={event.x1}, beyond width {info.width}")
        if info.frame_count is not None and event.frame >= info.frame_count:
            raise ValueError(f"Event at index {idx} points at frame {event.frame} of {info.frame_count}")
