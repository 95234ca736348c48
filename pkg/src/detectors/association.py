"""
Association Module

Pick the plate that belongs to an extraction event and read it.
"""

import logging
from typing import List, Optional

from src.detectors.ocr import ocr
from src.errors import OcrFailure
from src.frames.frame_source import Frame
from src.models.schemas import Detection, ExtractionEvent, PlateReading
from src.models.settings import OcrBackend

logger = logging.getLogger(__name__)


def associate(detections: List[Detection], event: ExtractionEvent, line_row: int) -> Optional[Detection]:
    """
    Choose the detection whose x-center lies in the event interval and whose
    y-center is closest to the scan line.

    Ties go to the higher confidence, then the leftmost box, so the result
    does not depend on the order of `detections`.
    """
    inside = [d for d in detections if event.x0 <= d.x_center < event.x1]
    if not inside:
        return None
    return min(inside, key=lambda d: (abs(d.y_center - line_row), -d.confidence, d.box))


def read_plate(
    frame: Frame,
    event: ExtractionEvent,
    detections: List[Detection],
    line_row: int,
    backend: OcrBackend = OcrBackend.GLYPH,
) -> PlateReading:
    """
    Associate and OCR one event. Never raises for per-event problems; they
    come back as a failed reading.
    """
    chosen = associate(detections, event, line_row)
    if chosen is None:
        logger.debug("Frame %d: no plate inside [%d,%d)", event.frame, event.x0, event.x1)
        return PlateReading.failed(event, "no plate inside event interval")
    try:
        text = ocr(frame, chosen, backend)
    except OcrFailure as e:
        logger.debug("Frame %d: OCR failed: %s", event.frame, e.reason)
        return PlateReading.failed(event, e.reason, box=chosen.box)
    return PlateReading(
        frame=event.frame, x0=event.x0, x1=event.x1, source=event.source,
        box=chosen.box, text=text,
    )
