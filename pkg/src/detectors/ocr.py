"""
OCR Module

Glyph-template OCR for plates drawn with the plate font, and the plugin
fallback that trusts text returned by the detector.
"""

import logging
from typing import List

import numpy as np
from skimage.filters import threshold_otsu

from src.config import MIN_GLYPH_CONTRAST, PLATE_LENGTH
from src.errors import OcrFailure
from src.frames.font import (
    CHARACTER_CLASSES,
    GLYPH_COLUMNS,
    GLYPH_ROWS,
    CharacterClass,
    glyph_box,
    split_bounds,
)
from src.frames.frame_source import Frame
from src.models.schemas import PLATE_PATTERN, Detection
from src.models.settings import OcrBackend

logger = logging.getLogger(__name__)

LETTER_POSITIONS = range(0, 3)
DIGIT_POSITIONS = range(3, PLATE_LENGTH)


def _downsample(ink: np.ndarray) -> np.ndarray:
    """Average ink over a 7x5 block grid and threshold at one half."""
    rows = split_bounds(ink.shape[0], GLYPH_ROWS)
    cols = split_bounds(ink.shape[1], GLYPH_COLUMNS)
    grid = np.zeros((GLYPH_ROWS, GLYPH_COLUMNS), dtype=bool)
    for r in range(GLYPH_ROWS):
        for c in range(GLYPH_COLUMNS):
            block = ink[rows[r]:rows[r + 1], cols[c]:cols[c + 1]]
            grid[r, c] = block.size > 0 and block.mean() >= 0.5
    return grid


def _classify(grid: np.ndarray, position: int) -> str:
    wants_letter = position in LETTER_POSITIONS
    candidates: List[CharacterClass] = [
        cls for cls in CHARACTER_CLASSES
        if (cls.letter if wants_letter else cls.digit) is not None
    ]
    scores = [int((cls.bitmap == grid).sum()) for cls in candidates]
    best = candidates[int(np.argmax(scores))]
    return best.letter if wants_letter else best.digit


def read_glyphs(crop: np.ndarray) -> str:
    """
    Decode a plate crop into 7 characters.

    Raises:
        OcrFailure: If the crop is smaller than 7x5 glyphs or has no contrast
    """
    height, width = crop.shape
    if width < PLATE_LENGTH * GLYPH_COLUMNS or height < GLYPH_ROWS:
        raise OcrFailure(f"crop {width}x{height} too small for {PLATE_LENGTH} glyphs")
    if int(crop.max()) - int(crop.min()) < MIN_GLYPH_CONTRAST:
        raise OcrFailure("no glyph contrast")

    ink = crop <= threshold_otsu(crop)
    cells = split_bounds(width, PLATE_LENGTH)
    text = []
    for position in range(PLATE_LENGTH):
        cx0, cx1 = cells[position], cells[position + 1]
        gx0, gy0, gx1, gy1 = glyph_box(cx1 - cx0, height)
        grid = _downsample(ink[gy0:gy1, cx0 + gx0:cx0 + gx1])
        text.append(_classify(grid, position))
    return "".join(text)


def ocr(frame: Frame, detection: Detection, backend: OcrBackend = OcrBackend.GLYPH) -> str:
    """
    Read the plate inside a detection.

    Raises:
        OcrFailure: If no valid 7-character reading can be produced
    """
    if not detection.fits(frame.width, frame.height):
        raise OcrFailure(f"box {detection.box} outside {frame.width}x{frame.height} frame")
    if OcrBackend(backend) == OcrBackend.PLUGIN:
        if detection.text is None or not PLATE_PATTERN.match(detection.text):
            raise OcrFailure(f"detector returned no valid text ({detection.text!r})")
        return detection.text
    x0, y0, x1, y1 = detection.box
    return read_glyphs(frame.pixels[y0:y1, x0:x1])
