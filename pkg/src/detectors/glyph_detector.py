"""
Glyph Detector Module

Finds bright, plate-shaped rectangles holding dark glyphs.
"""

import logging
from typing import List

import numpy as np
from scipy import ndimage

from src.config import PLATE_BRIGHTNESS_THRESHOLD, PLATE_LENGTH
from src.detectors.base_detector import BaseDetector
from src.frames.font import GLYPH_COLUMNS, GLYPH_ROWS
from src.frames.frame_source import Frame
from src.models.schemas import Detection

logger = logging.getLogger(__name__)

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


class GlyphDetector(BaseDetector):
    """
    Threshold + connected components over bright regions.

    A candidate is kept when its box is at least 7 glyphs wide, has a
    plate-like aspect ratio and contains a reasonable share of dark ink.
    """

    def __init__(
        self,
        threshold: int = PLATE_BRIGHTNESS_THRESHOLD,
        min_aspect: float = 2.0,
        max_aspect: float = 8.0,
        min_ink: float = 0.05,
        max_ink: float = 0.7,
    ):
        super().__init__(detector_id="glyph")
        self.threshold = threshold
        self.min_aspect = min_aspect
        self.max_aspect = max_aspect
        self.min_ink = min_ink
        self.max_ink = max_ink

    def detect(self, frame: Frame) -> List[Detection]:
        self.calls += 1
        bright = frame.pixels >= self.threshold
        labels, count = ndimage.label(bright, structure=_EIGHT_CONNECTED)
        detections: List[Detection] = []
        for box in ndimage.find_objects(labels):
            if box is None:
                continue
            rows, cols = box
            width, height = cols.stop - cols.start, rows.stop - rows.start
            if width < PLATE_LENGTH * GLYPH_COLUMNS or height < GLYPH_ROWS:
                continue
            aspect = width / height
            if not self.min_aspect <= aspect <= self.max_aspect:
                continue
            ink = 1.0 - float(bright[box].mean())
            if not self.min_ink <= ink <= self.max_ink:
                continue
            detections.append(Detection(
                box=(cols.start, rows.start, cols.stop, rows.stop),
                confidence=round(1.0 - ink, 4),
            ))
        logger.debug("Frame %d: %d bright regions, %d plate candidates", frame.index, count, len(detections))
        return detections
