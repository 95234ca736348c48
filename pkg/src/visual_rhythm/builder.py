"""
VR Builder Module

Stacks the scan line of consecutive frames into N x T images:
row t of a segment is row `line_row` of frame segment_start + t.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np
from PIL import Image

from src.frames.frame_source import Frame
from src.utils import ensure_directory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VrImage:
    """A filled VR segment; `pixels` has shape (rows, N)."""
    segment_start: int
    pixels: np.ndarray

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


def build_vr(
    frames: Iterable[Frame],
    line_row: int,
    segment_length: int,
    overlap: int = 0,
) -> Iterator[VrImage]:
    """
    Build VR segments from a frame stream.

    Consecutive segments share `overlap` rows. The last segment may be
    shorter; it is emitted only if it holds rows not already emitted.

    Raises:
        ValueError: On invalid segment settings or a line row outside the frame
    """
    if segment_length < 1:
        raise ValueError(f"segment length must be >= 1, got {segment_length}")
    if not 0 <= overlap < segment_length:
        raise ValueError(f"overlap must be in [0, {segment_length}), got {overlap}")

    buffer: Optional[np.ndarray] = None
    filled = 0
    fresh = 0
    segment_start = 0
    for frame in frames:
        if buffer is None:
            if not 0 <= line_row < frame.height:
                raise ValueError(f"line row {line_row} outside frame height {frame.height}")
            buffer = np.empty((segment_length, frame.width), dtype=np.uint8)
            segment_start = frame.index
        buffer[filled] = frame.row(line_row)
        filled += 1
        fresh += 1
        if filled == segment_length:
            yield VrImage(segment_start=segment_start, pixels=buffer.copy())
            if overlap:
                buffer[:overlap] = buffer[segment_length - overlap:]
            segment_start += segment_length - overlap
            filled = overlap
            fresh = 0

    if buffer is not None and fresh > 0:
        yield VrImage(segment_start=segment_start, pixels=buffer[:filled].copy())


def save_vr_image(vr: VrImage, path: str) -> None:
    """Write a VR image as PNG/PGM (format from the file suffix)."""
    target = Path(path)
    ensure_directory(str(target.parent))
    Image.fromarray(vr.pixels).save(target)
    logger.debug("Saved VR segment starting at %d to %s", vr.segment_start, target)
